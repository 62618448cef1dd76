#pragma once

// Test-side oracles, written independently of the library's elimination code.

#include <random>
#include <vector>

#include "fj/matrix.hpp"
#include "fj/parse.hpp"

namespace oracle {

using fj::Rational;
using fj::RationalMatrix;

// Determinant by cofactor-free Gaussian elimination over Q with full pivot search.
inline Rational det(RationalMatrix m) {
    const std::size_t n = m.size();
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            Rational f = m[i][c] / m[c][c];
            if (f == 0) continue;
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return d;
}

inline RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix c(a.size(), std::vector<Rational>(b.front().size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b.front().size(); ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline bool is_identity(const RationalMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            if (m[i][j] != (i == j ? 1 : 0)) return false;
    return true;
}

// Nullity by brute-force reduced row echelon over Q.
inline std::size_t nullity(RationalMatrix m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return cols - r;
}

// Random polynomial entry in the given symbols with small integer coefficients.
inline fj::Expr random_entry(std::mt19937_64& rng, const std::vector<std::string>& symbols, int density = 3) {
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(symbols.size()));
    fj::Expr e;
    for (int t = 0; t < density; ++t) {
        fj::Expr term(static_cast<long>(coef(rng)));
        int k = pick(rng);
        if (k < static_cast<int>(symbols.size())) term *= fj::Expr::symbol(symbols[static_cast<std::size_t>(k)]);
        e += term;
    }
    return e;
}

inline fj::SymMatrix random_antisymmetric(std::mt19937_64& rng, std::size_t n, const std::vector<std::string>& symbols) {
    fj::SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = random_entry(rng, symbols);
            m(j, i) = -m(i, j);
        }
    return m;
}

inline fj::SymMatrix random_square(std::mt19937_64& rng, std::size_t n, const std::vector<std::string>& symbols) {
    fj::SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = random_entry(rng, symbols, 2);
    return m;
}

inline fj::SymMatrix parse_matrix(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::vector<fj::Expr>> out;
    for (const auto& r : rows) {
        out.emplace_back();
        for (const auto& s : r) out.back().push_back(fj::parse(s));
    }
    return fj::SymMatrix::from_rows(out);
}

}  // namespace oracle
