#pragma once

// Exact symbolic expressions.
//
// An Expr is an interned handle to a canonical rational function
//     numerator / denominator
// over Q in symbols and sin/cos atoms, taken modulo sin(u)^2 + cos(u)^2 = 1.
// Canonical means:
//   * every sin atom has degree <= 1 in the numerator,
//   * the denominator contains no sin atom,
//   * numerator and denominator share no polynomial factor,
//   * coefficients are coprime integers and the denominator's leading
//     coefficient is positive.
// Equal normal forms are the same node, so Expr equality is pointer equality.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fj/poly.hpp"

namespace fj {

/// numerator / denominator in canonical form.
struct RatFun {
    Poly numerator;
    Poly denominator{1};

    static RatFun normalized(Poly numerator, Poly denominator);

    bool is_zero() const noexcept { return numerator.is_zero(); }
    bool is_polynomial() const { return denominator.is_one(); }
    bool operator==(const RatFun& o) const {
        return numerator == o.numerator && denominator == o.denominator;
    }
};

enum class ExprKind { Rational, Symbol, Sum, Product, Power, Sin, Cos };

class ExprNode;

class Expr {
public:
    /// The zero expression.
    Expr();
    Expr(long value);  // NOLINT(google-explicit-constructor)
    Expr(const Rational& value);  // NOLINT(google-explicit-constructor)
    explicit Expr(RatFun value);

    static Expr symbol(std::string_view name);
    static Expr from_atom(const Atom* atom);

    const RatFun& value() const;
    const Poly& numerator() const { return value().numerator; }
    const Poly& denominator() const { return value().denominator; }

    bool is_zero() const;
    bool is_one() const;
    bool is_constant() const;
    bool is_polynomial() const;
    std::optional<Rational> as_rational() const;
    /// The atom if this expression is a bare symbol or trig atom.
    const Atom* as_atom() const;

    // Tree view of the normal form.
    ExprKind kind() const;
    std::vector<Expr> children() const;
    /// Exponent of a Power node (may be negative).
    long exponent() const;
    /// Node count of the tree view; used to rank pivots.
    std::size_t size() const;

    std::string str() const;
    std::size_t hash() const;

    friend bool operator==(const Expr& a, const Expr& b) noexcept { return a.node_ == b.node_; }
    friend bool operator!=(const Expr& a, const Expr& b) noexcept { return a.node_ != b.node_; }

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    /// Throws EvaluationError(ZeroDenominator) when b is zero.
    friend Expr operator/(const Expr& a, const Expr& b);
    Expr operator-() const;
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }
    Expr pow(long exponent) const;

    /// Symbol names occurring anywhere, including inside trig arguments.
    std::vector<std::string> free_symbols() const;
    bool depends_on(const Expr& symbol) const;

    const std::shared_ptr<const ExprNode>& node() const noexcept { return node_; }
    explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

private:
    std::shared_ptr<const ExprNode> node_;
};

Expr sin(const Expr& arg);
Expr cos(const Expr& arg);

/// Partial derivative with respect to a symbol (chain rule through sin/cos).
Expr differentiate(const Expr& e, const Expr& symbol);
/// Replaces a symbol by a value everywhere, including inside trig arguments.
Expr substitute(const Expr& e, const Expr& symbol, const Expr& value);
/// Expressions are always stored in normal form; this is the identity and is
/// kept for callers that want to state the intent.
inline Expr simplify(const Expr& e) { return e; }

/// Floating-point evaluation. `symbol_value` receives the symbol name.
double evaluate_numeric(const Expr& e, const std::function<double(const std::string&)>& symbol_value);

struct ExprHash {
    std::size_t operator()(const Expr& e) const noexcept { return e.hash(); }
};

}  // namespace fj
