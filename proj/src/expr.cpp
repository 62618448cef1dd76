#include "fj/expr.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>
#include <unordered_map>

#include "fj/errors.hpp"

namespace fj {

class ExprNode {
public:
    explicit ExprNode(RatFun v) : value(std::move(v)), hash(value.numerator.hash() * 7919U ^ value.denominator.hash()) {}

    const RatFun value;
    const std::size_t hash;

    const std::string& text() const {
        std::call_once(text_once_, [this] { text_ = render(); });
        return text_;
    }

private:
    std::string render() const;

    mutable std::once_flag text_once_;
    mutable std::string text_;
};

namespace {

// ---------------------------------------------------------------- interning

struct Interner {
    std::mutex mutex;
    std::unordered_multimap<std::size_t, std::weak_ptr<const ExprNode>> table;
    std::size_t inserts = 0;
};

Interner& interner() {
    static Interner i;
    return i;
}

std::shared_ptr<const ExprNode> intern(RatFun value) {
    auto node = std::make_shared<const ExprNode>(std::move(value));
    auto& in = interner();
    std::lock_guard lock(in.mutex);
    auto range = in.table.equal_range(node->hash);
    for (auto it = range.first; it != range.second;) {
        if (auto live = it->second.lock()) {
            if (live->value == node->value) return live;
            ++it;
        } else {
            it = in.table.erase(it);
        }
    }
    in.table.emplace(node->hash, node);
    if (++in.inserts % 65536 == 0) {
        for (auto it = in.table.begin(); it != in.table.end();) {
            if (it->second.expired()) it = in.table.erase(it);
            else ++it;
        }
    }
    return node;
}

// ---------------------------------------------------------------- printing

std::string rational_text(const Rational& q) {
    return q.get_str();
}

std::string factor_text(const Atom* a, std::uint32_t e) {
    std::string s = a->key;
    if (e != 1) s += "^" + std::to_string(e);
    return s;
}

std::string monomial_text(const Monomial& m) {
    std::string s;
    // Smallest atom first reads naturally (R*k*sin(t1)).
    for (auto it = m.rbegin(); it != m.rend(); ++it) {
        if (!s.empty()) s += "*";
        s += factor_text(it->first, it->second);
    }
    return s;
}

// One term c*m/divisor, printed as p*m/q. Returns the text without a leading
// sign and reports the sign separately.
std::string term_text(const Term& t, const Integer& divisor, bool& negative) {
    Rational c = t.coefficient / Rational(divisor);
    negative = c < 0;
    if (negative) c = -c;
    const Integer& p = c.get_num();
    const Integer& q = c.get_den();
    std::string s;
    if (t.monomial.empty()) {
        s = rational_text(c);
        return s;
    }
    if (p != 1) s = p.get_str() + "*";
    s += monomial_text(t.monomial);
    if (q != 1) s += "/" + q.get_str();
    return s;
}

std::string poly_text(const Poly& p, const Integer& divisor) {
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : p.terms()) {
        bool negative = false;
        std::string body = term_text(t, divisor, negative);
        if (first) {
            s = negative ? "-" + body : body;
            first = false;
        } else {
            s += negative ? " - " : " + ";
            s += body;
        }
    }
    return s;
}

bool is_bare_monomial(const Poly& p) {
    return p.term_count() == 1 && p.leading_term().coefficient == 1 && !p.leading_term().monomial.empty();
}

}  // namespace

std::string ExprNode::render() const {
    const Poly& num = value.numerator;
    const Poly& den = value.denominator;
    if (den.is_constant()) {
        Integer d = den.constant_value().get_num();
        return poly_text(num, d);
    }
    std::string n = poly_text(num, Integer(1));
    if (num.term_count() > 1) n = "(" + n + ")";
    std::string d = poly_text(den, Integer(1));
    bool single_factor = is_bare_monomial(den) && den.leading_term().monomial.size() == 1;
    if (!single_factor) d = "(" + d + ")";
    return n + "/" + d;
}

// ---------------------------------------------------------------- RatFun

namespace {

Poly rationalize_step(Poly& num, Poly& den) {
    const Atom* s = nullptr;
    for (const auto& t : den.terms()) {
        for (const auto& f : t.monomial)
            if (f.first->is_sin()) {
                s = f.first;
                break;
            }
        if (s != nullptr) break;
    }
    Poly conj = flip_sin(den, s);
    num = reduce_trig(num * conj);
    den = reduce_trig(den * conj);
    return den;
}

// Groups terms by their sin-part and returns the sin-free cofactors.
std::vector<Poly> sin_components(const Poly& p) {
    std::vector<std::pair<Monomial, std::vector<Term>>> groups;
    for (const auto& t : p.terms()) {
        Monomial sins, rest;
        for (const auto& f : t.monomial) (f.first->is_sin() ? sins : rest).push_back(f);
        auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == sins; });
        if (it == groups.end()) {
            groups.emplace_back(std::move(sins), std::vector<Term>{});
            it = std::prev(groups.end());
        }
        it->second.push_back(Term{std::move(rest), t.coefficient});
    }
    std::vector<Poly> out;
    out.reserve(groups.size());
    for (auto& g : groups) out.push_back(Poly::from_terms(std::move(g.second)));
    // Fewer terms first: cheaper gcds that often reach 1 early.
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) { return a.term_count() < b.term_count(); });
    return out;
}

}  // namespace

RatFun RatFun::normalized(Poly num, Poly den) {
    if (den.is_zero()) throw EvaluationError(EvaluationError::Kind::ZeroDenominator, "division by zero");
    num = reduce_trig(num);
    den = reduce_trig(den);
    while (den.has_sin()) rationalize_step(num, den);
    if (num.is_zero()) return RatFun{Poly(), Poly(1)};
    if (!den.is_constant()) {
        Poly g = den;
        for (const auto& c : sin_components(num)) {
            g = gcd(g, c);
            if (g.is_constant()) break;
        }
        if (!g.is_constant()) {
            num = divide_or_throw(num, g);
            den = divide_or_throw(den, g);
        }
    }
    Rational cn = rational_content(num);
    Rational cd = rational_content(den);
    Rational r = cn / cd;
    num = num.scaled(Rational(r.get_num()) / cn);
    den = den.scaled(Rational(r.get_den()) / cd);
    if (den.leading_term().coefficient < 0) {
        num = -num;
        den = -den;
    }
    return RatFun{std::move(num), std::move(den)};
}

// ---------------------------------------------------------------- Expr

namespace {

const std::shared_ptr<const ExprNode>& zero_node() {
    static const std::shared_ptr<const ExprNode> z = intern(RatFun{Poly(), Poly(1)});
    return z;
}

}  // namespace

Expr::Expr() : node_(zero_node()) {}

Expr::Expr(long value) : Expr(Rational(value)) {}

Expr::Expr(const Rational& value) : node_(intern(RatFun::normalized(Poly(value), Poly(1)))) {}

Expr::Expr(RatFun value) : node_(intern(std::move(value))) {}

Expr Expr::symbol(std::string_view name) {
    return from_atom(symbol_atom(name));
}

Expr Expr::from_atom(const Atom* atom) {
    return Expr(intern(RatFun{Poly::atom(atom), Poly(1)}));
}

const RatFun& Expr::value() const { return node_->value; }

bool Expr::is_zero() const { return value().numerator.is_zero(); }

bool Expr::is_one() const { return value().numerator.is_one() && value().denominator.is_one(); }

bool Expr::is_constant() const { return value().numerator.is_constant() && value().denominator.is_constant(); }

bool Expr::is_polynomial() const { return value().denominator.is_constant(); }

std::optional<Rational> Expr::as_rational() const {
    if (!is_constant()) return std::nullopt;
    return value().numerator.constant_value() / value().denominator.constant_value();
}

const Atom* Expr::as_atom() const {
    const Poly& n = value().numerator;
    if (!value().denominator.is_one() || n.term_count() != 1) return nullptr;
    const Term& t = n.leading_term();
    if (t.coefficient != 1 || t.monomial.size() != 1 || t.monomial[0].second != 1) return nullptr;
    return t.monomial[0].first;
}

std::string Expr::str() const { return node_->text(); }

std::size_t Expr::hash() const { return node_->hash; }

ExprKind Expr::kind() const {
    if (is_constant()) return ExprKind::Rational;
    if (const Atom* a = as_atom()) {
        if (a->is_sin()) return ExprKind::Sin;
        if (a->is_cos()) return ExprKind::Cos;
        return ExprKind::Symbol;
    }
    const Poly& n = value().numerator;
    const Poly& d = value().denominator;
    if (d.is_constant()) {
        if (n.term_count() > 1) return ExprKind::Sum;
        const Term& t = n.leading_term();
        if (t.coefficient == 1 && d.is_one() && t.monomial.size() == 1) return ExprKind::Power;
        return ExprKind::Product;
    }
    if (n.is_one()) return ExprKind::Power;
    return ExprKind::Product;
}

long Expr::exponent() const {
    if (kind() != ExprKind::Power) return 1;
    const Poly& n = value().numerator;
    const Poly& d = value().denominator;
    if (d.is_one()) return static_cast<long>(n.leading_term().monomial[0].second);
    if (is_bare_monomial(d) && d.leading_term().monomial.size() == 1)
        return -static_cast<long>(d.leading_term().monomial[0].second);
    return -1;
}

std::vector<Expr> Expr::children() const {
    std::vector<Expr> out;
    switch (kind()) {
    case ExprKind::Rational:
    case ExprKind::Symbol:
        return out;
    case ExprKind::Sin:
    case ExprKind::Cos:
        out.push_back(Expr(as_atom()->argument));
        return out;
    default:
        break;
    }
    const Poly& n = value().numerator;
    const Poly& d = value().denominator;
    if (d.is_constant()) {
        Rational dv = d.constant_value();
        if (n.term_count() > 1) {
            for (const auto& t : n.terms())
                out.push_back(Expr(RatFun::normalized(Poly::from_terms({t}), d)));
            return out;
        }
        const Term& t = n.leading_term();
        if (kind() == ExprKind::Power) {
            out.push_back(Expr::from_atom(t.monomial[0].first));
            return out;
        }
        Rational c = t.coefficient / dv;
        if (c != 1) out.emplace_back(c);
        for (auto it = t.monomial.rbegin(); it != t.monomial.rend(); ++it)
            out.push_back(Expr::from_atom(it->first).pow(it->second));
        return out;
    }
    if (kind() == ExprKind::Power) {
        if (is_bare_monomial(d) && d.leading_term().monomial.size() == 1)
            out.push_back(Expr::from_atom(d.leading_term().monomial[0].first));
        else
            out.push_back(Expr(RatFun{d, Poly(1)}));
        return out;
    }
    out.push_back(Expr(RatFun::normalized(n, Poly(1))));
    out.push_back(Expr(RatFun::normalized(Poly(1), d)));
    return out;
}

std::size_t Expr::size() const {
    std::size_t s = 1;
    for (const auto& c : children()) s += c.size();
    return s;
}

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const RatFun& x = a.value();
    const RatFun& y = b.value();
    if (x.denominator == y.denominator)
        return Expr(RatFun::normalized(x.numerator + y.numerator, x.denominator));
    return Expr(RatFun::normalized(x.numerator * y.denominator + y.numerator * x.denominator,
                                   x.denominator * y.denominator));
}

Expr operator-(const Expr& a, const Expr& b) {
    return a + (-b);
}

Expr Expr::operator-() const {
    if (is_zero()) return *this;
    return Expr(RatFun{-value().numerator, value().denominator});
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    const RatFun& x = a.value();
    const RatFun& y = b.value();
    return Expr(RatFun::normalized(x.numerator * y.numerator, x.denominator * y.denominator));
}

Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_zero()) throw EvaluationError(EvaluationError::Kind::ZeroDenominator, "division by zero");
    if (b.is_one()) return a;
    const RatFun& x = a.value();
    const RatFun& y = b.value();
    return Expr(RatFun::normalized(x.numerator * y.denominator, x.denominator * y.numerator));
}

Expr Expr::pow(long exponent) const {
    if (exponent == 0) return Expr(1);
    if (exponent < 0) return Expr(1) / pow(-exponent);
    if (exponent == 1) return *this;
    auto e = static_cast<unsigned>(exponent);
    return Expr(RatFun::normalized(value().numerator.pow(e), value().denominator.pow(e)));
}

namespace {

void collect_symbols(const Expr& e, std::set<std::string>& out) {
    for (const Poly* p : {&e.numerator(), &e.denominator()}) {
        for (const Atom* a : p->atoms()) {
            if (a->is_symbol()) out.insert(a->key);
            else collect_symbols(Expr::from_atom(a).children().front(), out);
        }
    }
}

Expr trig(const Expr& arg, bool want_sin) {
    if (arg.is_zero()) return want_sin ? Expr() : Expr(1);
    // sin(-u) = -sin(u), cos(-u) = cos(u)
    bool negate = arg.numerator().leading_term().coefficient < 0;
    Expr u = negate ? -arg : arg;
    const Atom* s = sin_atom(u.node(), u.str());
    Expr out = Expr::from_atom(want_sin ? s : s->partner);
    return (negate && want_sin) ? -out : out;
}

}  // namespace

std::vector<std::string> Expr::free_symbols() const {
    std::set<std::string> s;
    collect_symbols(*this, s);
    return {s.begin(), s.end()};
}

bool Expr::depends_on(const Expr& symbol) const {
    const Atom* x = symbol.as_atom();
    if (x == nullptr || !x->is_symbol()) throw InternalError("depends_on expects a symbol");
    for (const Poly* p : {&numerator(), &denominator()}) {
        for (const Atom* a : p->atoms()) {
            if (a == x) return true;
            if (!a->is_symbol() && Expr(a->argument).depends_on(symbol)) return true;
        }
    }
    return false;
}

Expr sin(const Expr& arg) { return trig(arg, true); }

Expr cos(const Expr& arg) { return trig(arg, false); }

namespace {

template <typename AtomValue>
double evaluate_poly_double(const Poly& p, AtomValue&& atom_value) {
    double sum = 0;
    std::unordered_map<const Atom*, double> cache;
    for (const auto& t : p.terms()) {
        double term = t.coefficient.get_d();
        for (const auto& [a, e] : t.monomial) {
            auto it = cache.find(a);
            if (it == cache.end()) it = cache.emplace(a, atom_value(a)).first;
            term *= std::pow(it->second, static_cast<double>(e));
        }
        sum += term;
    }
    return sum;
}

// Expr-valued polynomial evaluation (used by differentiation/substitution).
Expr evaluate_poly_expr(const Poly& p, const std::function<Expr(const Atom*)>& atom_value) {
    Expr sum;
    std::unordered_map<const Atom*, Expr> cache;
    for (const auto& t : p.terms()) {
        Expr term(t.coefficient);
        for (const auto& [a, e] : t.monomial) {
            auto it = cache.find(a);
            if (it == cache.end()) it = cache.emplace(a, atom_value(a)).first;
            term *= it->second.pow(static_cast<long>(e));
        }
        sum += term;
    }
    return sum;
}

Expr atom_derivative(const Atom* a, const Expr& symbol) {
    if (a->is_symbol()) return a == symbol.as_atom() ? Expr(1) : Expr();
    Expr arg(a->argument);
    Expr darg = differentiate(arg, symbol);
    if (darg.is_zero()) return Expr();
    if (a->is_sin()) return Expr::from_atom(a->partner) * darg;
    return -Expr::from_atom(a->partner) * darg;
}

Expr poly_derivative(const Poly& p, const Expr& symbol) {
    Expr out;
    for (const Atom* a : p.atoms()) {
        Expr da = atom_derivative(a, symbol);
        if (da.is_zero()) continue;
        out += Expr(RatFun::normalized(p.partial(a), Poly(1))) * da;
    }
    return out;
}

}  // namespace

Expr differentiate(const Expr& e, const Expr& symbol) {
    const Atom* x = symbol.as_atom();
    if (x == nullptr || !x->is_symbol()) throw InternalError("differentiate expects a symbol");
    const Poly& n = e.numerator();
    const Poly& d = e.denominator();
    Expr dn = poly_derivative(n, symbol);
    if (d.is_constant()) return dn / Expr(d.constant_value());
    Expr dd = poly_derivative(d, symbol);
    Expr nn(RatFun::normalized(n, Poly(1)));
    Expr den(RatFun::normalized(d, Poly(1)));
    return (dn * den - nn * dd) / (den * den);
}

Expr substitute(const Expr& e, const Expr& symbol, const Expr& value) {
    if (!e.depends_on(symbol)) return e;
    const Atom* x = symbol.as_atom();
    auto atom_value = [&](const Atom* a) -> Expr {
        if (a == x) return value;
        if (a->is_symbol()) return Expr::from_atom(a);
        Expr arg(a->argument);
        if (!arg.depends_on(symbol)) return Expr::from_atom(a);
        Expr new_arg = substitute(arg, symbol, value);
        return a->is_sin() ? sin(new_arg) : cos(new_arg);
    };
    Expr n = evaluate_poly_expr(e.numerator(), atom_value);
    Expr d = evaluate_poly_expr(e.denominator(), atom_value);
    return n / d;
}

double evaluate_numeric(const Expr& e, const std::function<double(const std::string&)>& symbol_value) {
    auto atom_value = [&](const Atom* a) -> double {
        if (a->is_symbol()) return symbol_value(a->key);
        double u = evaluate_numeric(Expr(a->argument), symbol_value);
        return a->is_sin() ? std::sin(u) : std::cos(u);
    };
    double n = evaluate_poly_double(e.numerator(), atom_value);
    double d = evaluate_poly_double(e.denominator(), atom_value);
    return n / d;
}

}  // namespace fj
