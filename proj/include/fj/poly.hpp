#pragma once

// Sparse multivariate polynomials over Q. The indeterminates ("atoms") are
// named symbols plus sin/cos of an argument expression.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace fj {

using Integer = mpz_class;
using Rational = mpq_class;

class ExprNode;

struct Atom {
    enum class Kind { Symbol, Sin, Cos };

    Kind kind;
    /// Unique ordering key: the symbol name, or the rendered call "sin(arg)".
    std::string key;
    /// Argument of a trig atom; null for symbols.
    std::shared_ptr<const ExprNode> argument;
    /// The cos atom of a sin atom and vice versa.
    const Atom* partner = nullptr;

    bool is_symbol() const noexcept { return kind == Kind::Symbol; }
    bool is_sin() const noexcept { return kind == Kind::Sin; }
    bool is_cos() const noexcept { return kind == Kind::Cos; }
};

/// Interned symbol atom. Atoms live for the whole process.
const Atom* symbol_atom(std::string_view name);

/// Interned sin atom for an argument whose canonical rendering is `rendered`.
/// The matching cos atom is reachable through `partner`.
const Atom* sin_atom(std::shared_ptr<const ExprNode> argument, const std::string& rendered);

/// Total order on atoms (by key). Returns <0, 0, >0.
inline int compare_atoms(const Atom* a, const Atom* b) noexcept {
    if (a == b) return 0;
    return a->key.compare(b->key);
}

/// Power product, sorted with the largest atom first; exponents are positive.
using Monomial = std::vector<std::pair<const Atom*, std::uint32_t>>;

/// Lexicographic comparison of monomials.
int compare_monomials(const Monomial& a, const Monomial& b) noexcept;
Monomial multiply(const Monomial& a, const Monomial& b);
/// a / b when b divides a.
std::optional<Monomial> divide(const Monomial& a, const Monomial& b);

struct Term {
    Monomial monomial;
    Rational coefficient;
};

class Poly {
public:
    Poly() = default;
    explicit Poly(const Rational& constant);
    explicit Poly(long constant) : Poly(Rational(constant)) {}

    static Poly atom(const Atom* a, std::uint32_t exponent = 1);
    /// Builds from terms in any order; merges duplicates and drops zeros.
    static Poly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.empty());
    }
    bool is_one() const;
    /// Value of a constant polynomial (0 for the zero polynomial).
    Rational constant_value() const;
    const Term& leading_term() const { return terms_.front(); }

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scaled(const Rational& c) const;
    Poly times_monomial(const Monomial& m, const Rational& c) const;
    Poly pow(unsigned exponent) const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }
    std::size_t hash() const;

    std::uint32_t degree(const Atom* x) const;
    std::uint32_t min_degree(const Atom* x) const;
    bool contains(const Atom* x) const { return degree(x) > 0; }
    /// Coefficients of x^0 .. x^deg as polynomials free of x.
    std::vector<Poly> coefficients(const Atom* x) const;
    static Poly from_coefficients(const Atom* x, const std::vector<Poly>& coeffs);
    /// Formal partial derivative with respect to one atom.
    Poly partial(const Atom* x) const;
    /// Distinct atoms, largest first.
    std::vector<const Atom*> atoms() const;
    bool has_sin() const;

private:
    std::vector<Term> terms_;  // strictly decreasing monomials, nonzero coefficients
};

/// Applies sin(u)^2 -> 1 - cos(u)^2 until every sin atom has degree <= 1.
Poly reduce_trig(const Poly& p);
/// Substitutes sin(u) -> -sin(u) for one sin atom.
Poly flip_sin(const Poly& p, const Atom* sin);

/// Quotient a / b if b divides a exactly over Q, otherwise nullopt.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
/// Like divide_exact but throws InternalError when the division is not exact.
Poly divide_or_throw(const Poly& a, const Poly& b);

/// Positive rational c such that p / c has coprime integer coefficients
/// (1 for the zero polynomial).
Rational rational_content(const Poly& p);
/// p scaled to coprime integer coefficients with a positive leading coefficient.
Poly primitive_normalized(const Poly& p);

/// Greatest common divisor, normalized with primitive_normalized. gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// gcd of the coefficients of p viewed as a polynomial in x.
Poly content_in(const Poly& p, const Atom* x);
/// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b in x.
Poly pseudo_remainder(const Poly& a, const Poly& b, const Atom* x);

}  // namespace fj
