#include "fj/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "fj/errors.hpp"

namespace fj {

SymMatrix::SymMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

SymMatrix SymMatrix::identity(std::size_t n) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Expr(1);
    return m;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<Expr>>& rows) {
    std::size_t nc = rows.empty() ? 0 : rows.front().size();
    SymMatrix m(rows.size(), nc);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != nc) throw InputError("ragged matrix rows");
        for (std::size_t j = 0; j < nc; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<Expr> SymMatrix::row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<Expr> SymMatrix::column(std::size_t j) const {
    std::vector<Expr> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
}

bool SymMatrix::is_antisymmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        if (!(*this)(i, i).is_zero()) return false;
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (!((*this)(i, j) + (*this)(j, i)).is_zero()) return false;
    }
    return true;
}

bool SymMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Expr& e) { return e.is_zero(); });
}

SymMatrix SymMatrix::transpose() const {
    SymMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

SymMatrix SymMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw InternalError("block out of range");
    SymMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

SymMatrix SymMatrix::submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    SymMatrix b(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j) b(i, j) = (*this)(rs[i], cs[j]);
    return b;
}

SymMatrix SymMatrix::map(const std::function<Expr(const Expr&)>& f) const {
    SymMatrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = f(data_[k]);
    return out;
}

SymMatrix operator*(const SymMatrix& a, const SymMatrix& b) {
    if (a.cols_ != b.rows_) throw InternalError("matrix product shape mismatch");
    SymMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Expr& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
        }
    return c;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InternalError("matrix sum shape mismatch");
    SymMatrix c(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] + b.data_[k];
    return c;
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InternalError("matrix difference shape mismatch");
    SymMatrix c(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] - b.data_[k];
    return c;
}

std::vector<Expr> SymMatrix::operator*(const std::vector<Expr>& v) const {
    if (v.size() != cols_) throw InternalError("matrix-vector shape mismatch");
    std::vector<Expr> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
}

std::vector<Expr> matrix_entries(const SymMatrix& m) {
    std::vector<Expr> out;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_constant()) out.push_back(m(i, j));
    return out;
}

RationalMatrix evaluate_exact(const SymMatrix& m, const Bindings& at) {
    std::unordered_map<Expr, Rational, ExprHash> cache;
    RationalMatrix out(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Expr& e = m(i, j);
            auto it = cache.find(e);
            if (it == cache.end()) it = cache.emplace(e, evaluate_exact(e, at)).first;
            out[i][j] = it->second;
        }
    return out;
}

namespace {

std::size_t pivot_cost(const Expr& e) {
    std::size_t c = 0;
    for (const Poly* p : {&e.numerator(), &e.denominator()})
        for (const auto& t : p->terms()) c += 1 + t.monomial.size();
    return c;
}

bool certified_nonzero(const Expr& e, Sampler& sampler) {
    switch (is_zero(e, sampler)) {
    case ZeroTest::Zero: return false;
    case ZeroTest::NonZero: return true;
    case ZeroTest::Unknown: break;
    }
    switch (is_zero(e, sampler, 4 * sampler.options().samples)) {
    case ZeroTest::Zero: return false;
    case ZeroTest::NonZero: return true;
    case ZeroTest::Unknown: break;
    }
    throw DegenerateStratumError("pivot vanishes at every sample but is not identically zero", e.str());
}

struct Echelon {
    std::vector<std::vector<Expr>> a;
    std::vector<std::size_t> pivot_cols;
    int sign = 1;
};

// Fraction-free forward elimination. Only the first `pivot_width` columns
// are eligible as pivot columns.
Echelon echelon(std::vector<std::vector<Expr>> a, std::size_t pivot_width, Sampler& sampler) {
    Echelon out;
    const std::size_t nrows = a.size();
    const std::size_t width = nrows == 0 ? 0 : a.front().size();
    Expr prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_width && r < nrows; ++c) {
        std::vector<std::size_t> candidates;
        for (std::size_t i = r; i < nrows; ++i)
            if (!a[i][c].is_zero()) candidates.push_back(i);
        std::stable_sort(candidates.begin(), candidates.end(),
                         [&](std::size_t x, std::size_t y) { return pivot_cost(a[x][c]) < pivot_cost(a[y][c]); });
        std::optional<std::size_t> chosen;
        for (std::size_t i : candidates)
            if (certified_nonzero(a[i][c], sampler)) {
                chosen = i;
                break;
            }
        if (!chosen) continue;
        if (*chosen != r) {
            std::swap(a[*chosen], a[r]);
            out.sign = -out.sign;
        }
        const Expr p = a[r][c];
        for (std::size_t i = r + 1; i < nrows; ++i) {
            const Expr f = a[i][c];
            for (std::size_t j = c + 1; j < width; ++j) {
                Expr v = p * a[i][j];
                if (!f.is_zero() && !a[r][j].is_zero()) v -= f * a[r][j];
                a[i][j] = v / prev;
            }
            a[i][c] = Expr();
        }
        prev = p;
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.a = std::move(a);
    return out;
}

std::vector<std::vector<Expr>> rows_of(const SymMatrix& m) {
    std::vector<std::vector<Expr>> a(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) a[i] = m.row(i);
    return a;
}

// Solves the echelon system for the pivot unknowns given values of the rest.
void back_substitute(const Echelon& e, std::vector<Expr>& x, const std::function<Expr(std::size_t)>& rhs) {
    for (std::size_t k = e.pivot_cols.size(); k-- > 0;) {
        const std::size_t pc = e.pivot_cols[k];
        const auto& row = e.a[k];
        Expr s = rhs(k);
        for (std::size_t j = pc + 1; j < x.size(); ++j)
            if (!row[j].is_zero() && !x[j].is_zero()) s -= row[j] * x[j];
        x[pc] = s / row[pc];
    }
}

Rational rational_gcd(const Rational& a, const Rational& b) {
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    Integer n;
    Integer d;
    mpz_gcd(n.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
    mpz_lcm(d.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
    return Rational(n, d);
}

}  // namespace

std::vector<Expr> primitive_vector(const std::vector<Expr>& v) {
    Poly l(1);
    for (const auto& e : v) {
        if (e.is_zero() || e.denominator().is_constant()) continue;
        Poly g = gcd(l, e.denominator());
        l = divide_or_throw(l * e.denominator(), g);
    }
    std::vector<Poly> w;
    w.reserve(v.size());
    for (const auto& e : v) {
        if (e.is_zero()) w.emplace_back();
        else w.push_back(e.numerator() * divide_or_throw(l, e.denominator()));
    }
    Poly g;
    for (const auto& p : w) {
        if (p.is_zero()) continue;
        g = g.is_zero() ? primitive_normalized(p) : gcd(g, p);
        if (g.is_constant()) break;
    }
    Rational content = 0;
    for (auto& p : w) {
        if (p.is_zero()) continue;
        if (!g.is_constant()) p = divide_or_throw(p, g);
        content = rational_gcd(content, rational_content(p));
    }
    bool flip = false;
    for (const auto& p : w)
        if (!p.is_zero()) {
            flip = p.leading_term().coefficient < 0;
            break;
        }
    std::vector<Expr> out;
    out.reserve(w.size());
    for (auto& p : w) {
        if (p.is_zero()) {
            out.emplace_back();
            continue;
        }
        Poly q = p.scaled(Rational(flip ? -1 : 1) / content);
        out.emplace_back(RatFun::normalized(std::move(q), Poly(1)));
    }
    return out;
}

Expr determinant(const SymMatrix& m, Sampler& sampler) {
    if (!m.is_square()) throw InternalError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return Expr(1);
    if (m.flagged_antisymmetric() && n % 2 == 1) return Expr();
    Echelon e = echelon(rows_of(m), n, sampler);
    if (e.pivot_cols.size() < n) return Expr();
    Expr d = e.a[n - 1][n - 1];
    return e.sign < 0 ? -d : d;
}

Expr determinant(const SymMatrix& m) {
    Sampler s;
    return determinant(m, s);
}

Expr pfaffian(const SymMatrix& m, std::size_t max_dimension) {
    if (!m.is_square()) throw InputError("pfaffian of a non-square matrix");
    const std::size_t n = m.rows();
    if (n % 2 == 1) throw InputError("pfaffian of an odd-dimensional matrix");
    if (n > max_dimension) throw InputError("pfaffian disabled above dimension " + std::to_string(max_dimension));
    if (n > 62) throw InputError("pfaffian dimension too large");
    if (!m.is_antisymmetric()) throw InputError("pfaffian of a matrix that is not antisymmetric");
    std::unordered_map<std::uint64_t, Expr> memo;
    std::function<Expr(std::uint64_t)> pf = [&](std::uint64_t mask) -> Expr {
        if (mask == 0) return Expr(1);
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::uint64_t{1} << i)) idx.push_back(i);
        Expr sum;
        const std::size_t first = idx[0];
        for (std::size_t k = 1; k < idx.size(); ++k) {
            const Expr& a = m(first, idx[k]);
            if (a.is_zero()) continue;
            std::uint64_t rest = mask & ~(std::uint64_t{1} << first) & ~(std::uint64_t{1} << idx[k]);
            Expr term = a * pf(rest);
            if (k % 2 == 0) sum -= term;
            else sum += term;
        }
        memo.emplace(mask, sum);
        return sum;
    };
    std::uint64_t all = n == 0 ? 0 : ((std::uint64_t{1} << n) - 1);
    return pf(all);
}

KernelBasis kernel(const SymMatrix& m, Sampler& sampler) {
    const std::size_t n = m.cols();
    Echelon e = echelon(rows_of(m), n, sampler);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
    KernelBasis basis;
    for (std::size_t f = n; f-- > 0;) {
        if (is_pivot[f]) continue;
        std::vector<Expr> x(n);
        x[f] = Expr(1);
        back_substitute(e, x, [](std::size_t) { return Expr(); });
        basis.push_back(primitive_vector(x));
    }
    return basis;
}

KernelBasis kernel(const SymMatrix& m) {
    Sampler s;
    return kernel(m, s);
}

SymMatrix inverse(const SymMatrix& m, Sampler& sampler) {
    if (!m.is_square()) throw SingularMatrixError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    std::vector<std::vector<Expr>> a = rows_of(m);
    for (std::size_t i = 0; i < n; ++i) {
        a[i].resize(2 * n);
        a[i][n + i] = Expr(1);
    }
    Echelon e = echelon(std::move(a), n, sampler);
    if (e.pivot_cols.size() < n) throw SingularMatrixError("matrix is singular");
    SymMatrix inv(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Expr> x(n);
        back_substitute(e, x, [&](std::size_t row) { return e.a[row][n + k]; });
        for (std::size_t i = 0; i < n; ++i) inv(i, k) = x[i];
    }
    if (m.flagged_antisymmetric() || m.is_antisymmetric()) {
        if (!inv.is_antisymmetric()) throw InternalError("inverse of an antisymmetric matrix is not antisymmetric");
        inv.flag_antisymmetric(true);
    }
    return inv;
}

SymMatrix inverse(const SymMatrix& m) {
    Sampler s;
    return inverse(m, s);
}

std::size_t rational_rank(RationalMatrix m) {
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m.front().size();
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[rank][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

RankResult generic_rank(const SymMatrix& m, Sampler& sampler) {
    const std::vector<Expr> entries = matrix_entries(m);
    auto sample = [&]() -> std::size_t {
        for (int attempt = 0; attempt <= sampler.options().retries; ++attempt) {
            try {
                return rational_rank(evaluate_exact(m, sampler.point(entries)));
            } catch (const EvaluationError&) {
            }
        }
        throw DegenerateStratumError("every sample point hit a pole", entries.empty() ? "" : entries.front().str());
    };
    RankResult r;
    r.samples.push_back(sample());
    r.samples.push_back(sample());
    if (r.samples[0] != r.samples[1]) {
        r.stratified = true;
        r.samples.push_back(sample());
    }
    r.rank = *std::max_element(r.samples.begin(), r.samples.end());
    return r;
}

SymMatrix schur_complement(const SymMatrix& m, std::size_t r, Sampler& sampler) {
    if (!m.is_square() || r > m.rows()) throw InternalError("invalid Schur split");
    const std::size_t n = m.rows();
    const std::size_t s = n - r;
    SymMatrix d = m.block(r, r, s, s);
    if (r == 0) return d;
    SymMatrix a = m.block(0, 0, r, r);
    SymMatrix b = m.block(0, r, r, s);
    SymMatrix c = m.block(r, 0, s, r);
    SymMatrix out = d - c * (inverse(a, sampler) * b);
    if (m.is_antisymmetric()) out.flag_antisymmetric(true);
    return out;
}

SymMatrix schur_complement(const SymMatrix& m, std::size_t r) {
    Sampler s;
    return schur_complement(m, r, s);
}

}  // namespace fj
