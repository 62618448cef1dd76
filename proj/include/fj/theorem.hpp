#pragma once

// Checks that det f^(m) and the constraint bracket determinant vanish together.
//
// Brackets are taken on the canonical phase space of the lift. Each original
// variable y outside a (q, p) pair receives a conjugate pi_y and the primary
// constraint phi_y = pi_y - a_y; C is the bracket matrix of {phi_y} and the
// reduction's constraints Omega.

#include <string>
#include <utility>
#include <vector>

#include "fj/matrix.hpp"
#include "fj/reduction.hpp"

namespace fj {

struct BracketMatrix {
    SymMatrix entries;
    /// Constraint functions in row order: primary constraints, then Omegas.
    std::vector<Expr> functions;
    std::vector<std::pair<std::string, std::string>> pairs;
};

/// {F, G} = sum over pairs of dF/dq dG/dp - dF/dp dG/dq.
Expr poisson_bracket(const Expr& f, const Expr& g, const std::vector<std::pair<std::string, std::string>>& pairs);

BracketMatrix constraint_bracket_matrix(const ReductionReport& report);

struct Verdict {
    bool pass = false;
    std::string route;
    Expr lhs;
    Expr rhs;
    ZeroTest lhs_class = ZeroTest::Unknown;
    ZeroTest rhs_class = ZeroTest::Unknown;
    int points = 0;
    std::vector<Bindings> disagreements;
};

inline constexpr int default_trials = 20;

/// det of the extended matrix against det C at `trials` shared exact points.
Verdict verify_theorem1(const ReductionReport& report, int trials, Sampler& sampler);
Verdict verify_theorem1(const ReductionReport& report, int trials = default_trials);

/// Schur complement of the canonical sector against det C.
Verdict schur_route_check(const ReductionReport& report, int trials, Sampler& sampler);
Verdict schur_route_check(const ReductionReport& report, int trials = default_trials);

}  // namespace fj
