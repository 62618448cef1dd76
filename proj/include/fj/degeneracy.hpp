#pragma once

#include <map>
#include <string>
#include <vector>

#include "fj/reduction.hpp"

namespace fj {

struct Factor {
    Expr factor;
    unsigned multiplicity = 1;
    /// Depends on parameters only: its vanishing is a global degeneracy condition.
    bool parameter_only = false;
    /// Comes from the determinant's denominator (a pole).
    bool denominator = false;
};

struct DegeneracyReport {
    Expr determinant;
    Rational content = 1;
    std::vector<Factor> factors;
    std::vector<std::string> parameters;
    /// Parameter-only numerator factors; det vanishes wherever one does.
    std::vector<Expr> vanishing_conditions;

    /// content * prod(numerator factors^m) / prod(denominator factors^m).
    Expr product() const;
};

/// Square-free factors of a polynomial, splitting contents atom by atom with
/// the listed symbols taken first. Constant content is returned separately.
std::vector<std::pair<Poly, unsigned>> square_free_factors(const Poly& p, const std::vector<std::string>& first,
                                                           Rational& content);

DegeneracyReport degeneracy_locus(const ReductionReport& report);
DegeneracyReport degeneracy_locus(const Expr& determinant, const std::vector<std::string>& parameters);

struct ScanRow {
    std::vector<Rational> point;
    /// "Regular", "Singular" or "pole".
    std::string status;
    /// The determinant at the point; empty for poles.
    std::string det;
};

struct ScanTable {
    std::vector<std::string> parameters;
    std::vector<ScanRow> rows;

    std::string csv() const;
};

using Grid = std::vector<std::pair<std::string, std::vector<Rational>>>;

/// Cartesian product in lexicographic order (first parameter slowest).
/// Throws InputError when a report parameter is missing from the grid.
ScanTable scan(const ReductionReport& report, const Grid& grid);

}  // namespace fj
