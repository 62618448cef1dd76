#pragma once

// Exact linear algebra over Expr entries. Elimination is fraction-free
// (Bareiss); pivots are chosen among entries the zero test certifies as
// NonZero, cheapest first.

#include <cstddef>
#include <functional>
#include <vector>

#include "fj/expr.hpp"
#include "fj/zero_test.hpp"

namespace fj {

class SymMatrix {
public:
    SymMatrix() = default;
    SymMatrix(std::size_t rows, std::size_t cols);
    explicit SymMatrix(std::size_t n) : SymMatrix(n, n) {}
    static SymMatrix identity(std::size_t n);
    static SymMatrix from_rows(const std::vector<std::vector<Expr>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t dimension() const noexcept { return rows_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Expr& operator()(std::size_t i, std::size_t j) { return data_.at(i * cols_ + j); }
    const Expr& operator()(std::size_t i, std::size_t j) const { return data_.at(i * cols_ + j); }
    std::vector<Expr> row(std::size_t i) const;
    std::vector<Expr> column(std::size_t j) const;

    /// The optional antisymmetry flag; set by producers that guarantee it.
    bool flagged_antisymmetric() const noexcept { return antisymmetric_; }
    void flag_antisymmetric(bool on) noexcept { antisymmetric_ = on; }
    /// Entrywise check: M(i,j) + M(j,i) == 0 and M(i,i) == 0.
    bool is_antisymmetric() const;
    bool is_zero() const;

    SymMatrix transpose() const;
    SymMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    /// Rows and columns taken in the given order.
    SymMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
    SymMatrix map(const std::function<Expr(const Expr&)>& f) const;

    friend SymMatrix operator*(const SymMatrix& a, const SymMatrix& b);
    friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
    friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
    std::vector<Expr> operator*(const std::vector<Expr>& v) const;

    bool operator==(const SymMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }
    bool operator!=(const SymMatrix& o) const { return !(*this == o); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Expr> data_;
    bool antisymmetric_ = false;
};

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix evaluate_exact(const SymMatrix& m, const Bindings& at);
std::vector<Expr> matrix_entries(const SymMatrix& m);

/// Right null-space basis. Vectors are ordered by free column, last free
/// column first, and normalized to coprime polynomial entries whose first
/// nonzero entry has a positive leading coefficient.
using KernelBasis = std::vector<std::vector<Expr>>;

Expr determinant(const SymMatrix& m, Sampler& sampler);
Expr determinant(const SymMatrix& m);

inline constexpr std::size_t pfaffian_default_limit = 10;
/// Throws InputError for odd or non-antisymmetric input, or above `max_dimension`.
Expr pfaffian(const SymMatrix& m, std::size_t max_dimension = pfaffian_default_limit);

KernelBasis kernel(const SymMatrix& m, Sampler& sampler);
KernelBasis kernel(const SymMatrix& m);

/// Throws SingularMatrixError when the determinant vanishes.
SymMatrix inverse(const SymMatrix& m, Sampler& sampler);
SymMatrix inverse(const SymMatrix& m);

struct RankResult {
    std::size_t rank = 0;
    /// Samples disagreed; rank is the maximum seen.
    bool stratified = false;
    std::vector<std::size_t> samples;
};

RankResult generic_rank(const SymMatrix& m, Sampler& sampler);
std::size_t rational_rank(RationalMatrix m);

/// D - C*A^-1*B for the split of m at index r. Throws SingularMatrixError
/// when the leading r-by-r block is singular.
SymMatrix schur_complement(const SymMatrix& m, std::size_t r, Sampler& sampler);
SymMatrix schur_complement(const SymMatrix& m, std::size_t r);

/// Normalizes a vector of rational functions to coprime polynomial entries with
/// the first nonzero entry's leading coefficient positive.
std::vector<Expr> primitive_vector(const std::vector<Expr>& v);

}  // namespace fj
