#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "fj/degeneracy.hpp"
#include "fj/reduction.hpp"
#include "fj/theorem.hpp"

namespace fj {

/// Top-level keys, in emission order.
inline constexpr const char* report_keys[] = {
    "Constraints",   "ExtendedMatrix", "ExtendedOneForm", "ExtendedSymplecticVariables",
    "InverseExtendedMatrix", "IterationCount", "MatrixStatus", "Diagnostics", "Trace", "Theorem1", "Degeneracy",
};

struct TheoremResults {
    Verdict bracket;
    std::optional<Verdict> schur;
};

nlohmann::ordered_json emit_report(const ReductionReport& report, const std::optional<TheoremResults>& theorem,
                                   const std::optional<DegeneracyReport>& degeneracy);

nlohmann::ordered_json matrix_json(const SymMatrix& m);
nlohmann::ordered_json verdict_json(const Verdict& v);

/// Fixed-layout terminal summary.
std::string summarize(const ReductionReport& report);

}  // namespace fj
