#include "fj/poly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <unordered_map>

#include "fj/errors.hpp"

namespace fj {

namespace {

struct AtomRegistry {
    std::mutex mutex;
    std::unordered_map<std::string, std::unique_ptr<Atom>> atoms;
};

AtomRegistry& registry() {
    static AtomRegistry r;
    return r;
}

std::size_t hash_rational(const Rational& q) {
    std::size_t h = mpz_get_ui(q.get_num_mpz_t());
    h ^= static_cast<std::size_t>(mpz_sgn(q.get_num_mpz_t())) * 0x9e3779b97f4a7c15ULL;
    h ^= mpz_get_ui(q.get_den_mpz_t()) * 0xbf58476d1ce4e5b9ULL;
    return h;
}

}  // namespace

const Atom* symbol_atom(std::string_view name) {
    auto& reg = registry();
    std::lock_guard lock(reg.mutex);
    std::string key(name);
    auto it = reg.atoms.find(key);
    if (it != reg.atoms.end()) {
        if (!it->second->is_symbol()) throw InternalError("atom key clash for " + key);
        return it->second.get();
    }
    auto atom = std::make_unique<Atom>();
    atom->kind = Atom::Kind::Symbol;
    atom->key = key;
    const Atom* out = atom.get();
    reg.atoms.emplace(std::move(key), std::move(atom));
    return out;
}

const Atom* sin_atom(std::shared_ptr<const ExprNode> argument, const std::string& rendered) {
    auto& reg = registry();
    std::lock_guard lock(reg.mutex);
    std::string skey = "sin(" + rendered + ")";
    auto it = reg.atoms.find(skey);
    if (it != reg.atoms.end()) return it->second.get();
    auto s = std::make_unique<Atom>();
    auto c = std::make_unique<Atom>();
    s->kind = Atom::Kind::Sin;
    s->key = skey;
    s->argument = argument;
    c->kind = Atom::Kind::Cos;
    c->key = "cos(" + rendered + ")";
    c->argument = std::move(argument);
    s->partner = c.get();
    c->partner = s.get();
    const Atom* out = s.get();
    std::string ckey = c->key;
    reg.atoms.emplace(std::move(skey), std::move(s));
    reg.atoms.emplace(std::move(ckey), std::move(c));
    return out;
}

int compare_monomials(const Monomial& a, const Monomial& b) noexcept {
    std::size_t i = 0;
    for (;; ++i) {
        if (i == a.size()) return i == b.size() ? 0 : -1;
        if (i == b.size()) return 1;
        int c = compare_atoms(a[i].first, b[i].first);
        if (c != 0) return c > 0 ? 1 : -1;
        if (a[i].second != b[i].second) return a[i].second > b[i].second ? 1 : -1;
    }
}

Monomial multiply(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = compare_atoms(a[i].first, b[j].first);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
    return out;
}

std::optional<Monomial> divide(const Monomial& a, const Monomial& b) {
    Monomial out;
    std::size_t i = 0, j = 0;
    while (j < b.size()) {
        if (i == a.size()) return std::nullopt;
        int c = compare_atoms(a[i].first, b[j].first);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            return std::nullopt;
        } else {
            if (a[i].second < b[j].second) return std::nullopt;
            if (a[i].second > b[j].second) out.emplace_back(a[i].first, a[i].second - b[j].second);
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
    return out;
}

Poly::Poly(const Rational& constant) {
    if (constant != 0) {
        terms_.push_back(Term{{}, constant});
        terms_.back().coefficient.canonicalize();
    }
}

Poly Poly::atom(const Atom* a, std::uint32_t exponent) {
    Poly p;
    if (exponent == 0) return Poly(1);
    p.terms_.push_back(Term{{{a, exponent}}, Rational(1)});
    return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
        return compare_monomials(x.monomial, y.monomial) > 0;
    });
    Poly p;
    p.terms_.reserve(terms.size());
    for (auto& t : terms) {
        t.coefficient.canonicalize();
        if (!p.terms_.empty() && compare_monomials(p.terms_.back().monomial, t.monomial) == 0) {
            p.terms_.back().coefficient += t.coefficient;
        } else {
            if (!p.terms_.empty() && p.terms_.back().coefficient == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().coefficient == 0) p.terms_.pop_back();
    return p;
}

bool Poly::is_one() const {
    return terms_.size() == 1 && terms_[0].monomial.empty() && terms_[0].coefficient == 1;
}

Rational Poly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw InternalError("constant_value of a non-constant polynomial");
    return terms_[0].coefficient;
}

Poly Poly::operator-() const {
    Poly p = *this;
    for (auto& t : p.terms_) t.coefficient = -t.coefficient;
    return p;
}

namespace {

Poly merge(const Poly& a, const Poly& b, bool subtract) {
    std::vector<Term> out;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    out.reserve(ta.size() + tb.size());
    std::size_t i = 0, j = 0;
    while (i < ta.size() || j < tb.size()) {
        int c;
        if (i == ta.size()) c = -1;
        else if (j == tb.size()) c = 1;
        else c = compare_monomials(ta[i].monomial, tb[j].monomial);
        if (c > 0) {
            out.push_back(ta[i++]);
        } else if (c < 0) {
            Term t = tb[j++];
            if (subtract) t.coefficient = -t.coefficient;
            out.push_back(std::move(t));
        } else {
            Rational s = subtract ? Rational(ta[i].coefficient - tb[j].coefficient)
                                  : Rational(ta[i].coefficient + tb[j].coefficient);
            if (s != 0) out.push_back(Term{ta[i].monomial, s});
            ++i;
            ++j;
        }
    }
    // `out` is already sorted and merged.
    Poly p;
    return Poly::from_terms(std::move(out));
}

}  // namespace

Poly operator+(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return merge(a, b, false);
}

Poly operator-(const Poly& a, const Poly& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    return merge(a, b, true);
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    if (a.is_constant()) return b.scaled(a.constant_value());
    if (b.is_constant()) return a.scaled(b.constant_value());
    std::vector<Term> out;
    out.reserve(a.term_count() * b.term_count());
    for (const auto& x : a.terms())
        for (const auto& y : b.terms())
            out.push_back(Term{multiply(x.monomial, y.monomial), x.coefficient * y.coefficient});
    return Poly::from_terms(std::move(out));
}

Poly Poly::scaled(const Rational& c) const {
    if (c == 0) return Poly();
    Poly p = *this;
    for (auto& t : p.terms_) t.coefficient *= c;
    return p;
}

Poly Poly::times_monomial(const Monomial& m, const Rational& c) const {
    if (c == 0) return Poly();
    Poly p;
    p.terms_.reserve(terms_.size());
    // Multiplying by a monomial preserves the order.
    for (const auto& t : terms_) p.terms_.push_back(Term{multiply(t.monomial, m), t.coefficient * c});
    return p;
}

Poly Poly::pow(unsigned exponent) const {
    Poly result(1);
    Poly base = *this;
    while (exponent > 0) {
        if (exponent & 1U) result = result * base;
        exponent >>= 1U;
        if (exponent > 0) base = base * base;
    }
    return result;
}

bool Poly::operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].coefficient != o.terms_[i].coefficient) return false;
        if (terms_[i].monomial != o.terms_[i].monomial) return false;
    }
    return true;
}

std::size_t Poly::hash() const {
    std::size_t h = terms_.size();
    for (const auto& t : terms_) {
        h = h * 1000003U ^ hash_rational(t.coefficient);
        for (const auto& [a, e] : t.monomial) {
            h = h * 31U ^ std::hash<const void*>{}(a);
            h = h * 31U ^ e;
        }
    }
    return h;
}

std::uint32_t Poly::degree(const Atom* x) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_)
        for (const auto& [a, e] : t.monomial)
            if (a == x) d = std::max(d, e);
    return d;
}

std::uint32_t Poly::min_degree(const Atom* x) const {
    if (terms_.empty()) return 0;
    std::uint32_t d = UINT32_MAX;
    for (const auto& t : terms_) {
        std::uint32_t e = 0;
        for (const auto& [a, k] : t.monomial)
            if (a == x) e = k;
        d = std::min(d, e);
    }
    return d;
}

std::vector<Poly> Poly::coefficients(const Atom* x) const {
    std::vector<std::vector<Term>> buckets(degree(x) + 1);
    for (const auto& t : terms_) {
        std::uint32_t e = 0;
        Monomial rest;
        rest.reserve(t.monomial.size());
        for (const auto& f : t.monomial) {
            if (f.first == x) e = f.second;
            else rest.push_back(f);
        }
        buckets[e].push_back(Term{std::move(rest), t.coefficient});
    }
    std::vector<Poly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(Poly::from_terms(std::move(b)));
    return out;
}

Poly Poly::from_coefficients(const Atom* x, const std::vector<Poly>& coeffs) {
    std::vector<Term> out;
    for (std::size_t d = 0; d < coeffs.size(); ++d) {
        for (const auto& t : coeffs[d].terms()) {
            if (d == 0) {
                out.push_back(t);
            } else {
                out.push_back(Term{multiply(t.monomial, {{x, static_cast<std::uint32_t>(d)}}), t.coefficient});
            }
        }
    }
    return Poly::from_terms(std::move(out));
}

Poly Poly::partial(const Atom* x) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        for (std::size_t i = 0; i < t.monomial.size(); ++i) {
            if (t.monomial[i].first != x) continue;
            Monomial m = t.monomial;
            std::uint32_t e = m[i].second;
            if (e == 1) m.erase(m.begin() + static_cast<std::ptrdiff_t>(i));
            else m[i].second = e - 1;
            out.push_back(Term{std::move(m), t.coefficient * e});
        }
    }
    return Poly::from_terms(std::move(out));
}

std::vector<const Atom*> Poly::atoms() const {
    std::vector<const Atom*> out;
    for (const auto& t : terms_)
        for (const auto& f : t.monomial) out.push_back(f.first);
    std::sort(out.begin(), out.end(), [](const Atom* a, const Atom* b) { return compare_atoms(a, b) > 0; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Poly::has_sin() const {
    for (const auto& t : terms_)
        for (const auto& f : t.monomial)
            if (f.first->is_sin()) return true;
    return false;
}

Poly reduce_trig(const Poly& p) {
    if (!p.has_sin()) return p;
    bool again = true;
    Poly current = p;
    while (again) {
        again = false;
        std::vector<Term> kept;
        Poly extra;
        for (const auto& t : current.terms()) {
            const Atom* s = nullptr;
            std::uint32_t e = 0;
            for (const auto& f : t.monomial) {
                if (f.first->is_sin() && f.second >= 2) {
                    s = f.first;
                    e = f.second;
                    break;
                }
            }
            if (s == nullptr) {
                kept.push_back(t);
                continue;
            }
            again = true;
            Monomial rest;
            for (const auto& f : t.monomial) {
                if (f.first == s) {
                    if (e % 2 == 1) rest.emplace_back(s, 1U);
                } else {
                    rest.push_back(f);
                }
            }
            std::sort(rest.begin(), rest.end(),
                      [](const auto& a, const auto& b) { return compare_atoms(a.first, b.first) > 0; });
            Poly one_minus_cos2 = Poly(1) - Poly::atom(s->partner, 2);
            extra += one_minus_cos2.pow(e / 2).times_monomial(rest, t.coefficient);
        }
        current = Poly::from_terms(std::move(kept)) + extra;
    }
    return current;
}

Poly flip_sin(const Poly& p, const Atom* sin) {
    std::vector<Term> out = p.terms();
    for (auto& t : out)
        for (const auto& f : t.monomial)
            if (f.first == sin && f.second % 2 == 1) t.coefficient = -t.coefficient;
    return Poly::from_terms(std::move(out));
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw InternalError("polynomial division by zero");
    if (a.is_zero()) return Poly();
    if (b.is_constant()) return a.scaled(1 / b.constant_value());
    const Term& lead = b.leading_term();
    std::vector<Term> quotient;
    Poly r = a;
    while (!r.is_zero()) {
        const Term& lt = r.leading_term();
        auto m = divide(lt.monomial, lead.monomial);
        if (!m) return std::nullopt;
        Rational c = lt.coefficient / lead.coefficient;
        r = r - b.times_monomial(*m, c);
        quotient.push_back(Term{std::move(*m), c});
    }
    return Poly::from_terms(std::move(quotient));
}

Poly divide_or_throw(const Poly& a, const Poly& b) {
    auto q = divide_exact(a, b);
    if (!q) throw InternalError("inexact polynomial division");
    return std::move(*q);
}

Rational rational_content(const Poly& p) {
    if (p.is_zero()) return Rational(1);
    Integer num_gcd = 0;
    Integer den_lcm = 1;
    for (const auto& t : p.terms()) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coefficient.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coefficient.get_den_mpz_t());
    }
    Rational c(num_gcd, den_lcm);
    c.canonicalize();
    return c;
}

Poly primitive_normalized(const Poly& p) {
    if (p.is_zero()) return p;
    Rational c = rational_content(p);
    if (p.leading_term().coefficient < 0) c = -c;
    return p.scaled(1 / c);
}

namespace {

const Atom* main_atom(const Poly& a, const Poly& b) {
    const Atom* best = nullptr;
    for (const auto* p : {&a, &b})
        for (const auto& t : p->terms())
            for (const auto& f : t.monomial)
                if (best == nullptr || compare_atoms(f.first, best) > 0) best = f.first;
    return best;
}

Poly leading_coefficient(const Poly& p, const Atom* x) {
    return p.coefficients(x).back();
}

Poly primitive_part_in(const Poly& p, const Atom* x) {
    Poly c = content_in(p, x);
    return divide_or_throw(p, c);
}

// Subresultant PRS for polynomials primitive in x with positive degree in x.
Poly subresultant_gcd(Poly a, Poly b, const Atom* x) {
    if (a.degree(x) < b.degree(x)) std::swap(a, b);
    Poly g(1), h(1);
    while (true) {
        std::uint32_t d = a.degree(x) - b.degree(x);
        Poly r = pseudo_remainder(a, b, x);
        if (r.is_zero()) return primitive_part_in(b, x);
        if (r.degree(x) == 0) return Poly(1);
        a = b;
        b = divide_or_throw(r, g * h.pow(d));
        g = leading_coefficient(a, x);
        if (d == 1) {
            h = g;
        } else if (d > 1) {
            h = divide_or_throw(g.pow(d), h.pow(d - 1));
        }
    }
}

}  // namespace

Poly pseudo_remainder(const Poly& a, const Poly& b, const Atom* x) {
    std::uint32_t db = b.degree(x);
    std::uint32_t da = a.degree(x);
    if (da < db) return a;
    Poly lb = leading_coefficient(b, x);
    Poly r = a;
    std::uint32_t steps = 0;
    while (!r.is_zero() && r.degree(x) >= db) {
        std::uint32_t dr = r.degree(x);
        Poly lr = leading_coefficient(r, x);
        Poly shift = lr * Poly::atom(x, dr - db);
        r = lb * r - shift * b;
        ++steps;
    }
    std::uint32_t total = da - db + 1;
    if (steps < total) r = lb.pow(total - steps) * r;
    return r;
}

Poly content_in(const Poly& p, const Atom* x) {
    Poly g;
    for (const auto& c : p.coefficients(x)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return primitive_normalized(b);
    if (b.is_zero()) return primitive_normalized(a);
    if (a.is_constant() || b.is_constant()) return Poly(1);
    if (a == b) return primitive_normalized(a);
    const Atom* x = main_atom(a, b);
    if (!a.contains(x)) return gcd(a, content_in(b, x));
    if (!b.contains(x)) return gcd(content_in(a, x), b);
    Poly ca = content_in(a, x);
    Poly cb = content_in(b, x);
    Poly pa = divide_or_throw(a, ca);
    Poly pb = divide_or_throw(b, cb);
    Poly g = subresultant_gcd(pa, pb, x);
    Poly c = gcd(ca, cb);
    return primitive_normalized(c * g);
}

}  // namespace fj
