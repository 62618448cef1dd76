#include "fj/zero_test.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "fj/errors.hpp"

namespace fj {

namespace {

std::string angle_key(const Atom* a) {
    // key is "sin(<arg>)" or "cos(<arg>)"
    return a->key.substr(4, a->key.size() - 5);
}

Rational evaluate_poly(const Poly& p, const Bindings& at, std::unordered_map<const Atom*, Rational>& cache) {
    Rational sum = 0;
    for (const auto& t : p.terms()) {
        Rational term = t.coefficient;
        for (const auto& [a, e] : t.monomial) {
            auto it = cache.find(a);
            if (it == cache.end()) {
                Rational v;
                if (a->is_symbol()) {
                    auto s = at.symbols.find(a->key);
                    if (s == at.symbols.end())
                        throw EvaluationError(EvaluationError::Kind::UnboundSymbol, "unbound symbol '" + a->key + "'");
                    v = s->second;
                } else {
                    auto s = at.angles.find(angle_key(a));
                    if (s == at.angles.end())
                        throw EvaluationError(EvaluationError::Kind::UnboundSymbol,
                                              "unbound angle '" + angle_key(a) + "'");
                    const Rational& x = s->second;
                    Rational d = 1 + x * x;
                    v = a->is_sin() ? Rational(2 * x / d) : Rational((1 - x * x) / d);
                }
                it = cache.emplace(a, v).first;
            }
            Rational f = 1;
            for (std::uint32_t k = 0; k < e; ++k) f *= it->second;
            term *= f;
        }
        sum += term;
    }
    return sum;
}

}  // namespace

Rational evaluate_exact(const Expr& e, const Bindings& at) {
    std::unordered_map<const Atom*, Rational> cache;
    Rational n = evaluate_poly(e.numerator(), at, cache);
    Rational d = evaluate_poly(e.denominator(), at, cache);
    if (d == 0) throw EvaluationError(EvaluationError::Kind::ZeroDenominator, "zero denominator in " + e.str());
    return n / d;
}

void required_bindings(const Expr& e, std::vector<std::string>& symbols, std::vector<std::string>& angles) {
    std::set<std::string> s(symbols.begin(), symbols.end());
    std::set<std::string> a(angles.begin(), angles.end());
    for (const Poly* p : {&e.numerator(), &e.denominator()}) {
        for (const Atom* atom : p->atoms()) {
            if (atom->is_symbol()) s.insert(atom->key);
            else a.insert(angle_key(atom));
        }
    }
    symbols.assign(s.begin(), s.end());
    angles.assign(a.begin(), a.end());
}

Sampler::Sampler(std::uint64_t seed, SamplingOptions options) : options_(options), rng_(seed) {}

Rational Sampler::draw() {
    std::uniform_int_distribution<long> num(-options_.magnitude, options_.magnitude);
    std::uniform_int_distribution<long> den(1, options_.magnitude);
    Rational q(num(rng_), den(rng_));
    q.canonicalize();
    return q;
}

void Sampler::complete(Bindings& at, const Expr& e) {
    std::vector<std::string> symbols;
    std::vector<std::string> angles;
    required_bindings(e, symbols, angles);
    for (const auto& s : symbols)
        if (!at.symbols.count(s)) at.symbols[s] = draw();
    for (const auto& a : angles)
        if (!at.angles.count(a)) at.angles[a] = draw();
}

Bindings Sampler::point(const std::vector<Expr>& exprs) {
    std::vector<std::string> symbols;
    std::vector<std::string> angles;
    for (const auto& e : exprs) required_bindings(e, symbols, angles);
    Bindings at;
    for (const auto& s : symbols) at.symbols[s] = draw();
    for (const auto& a : angles) at.angles[a] = draw();
    return at;
}

const char* to_string(ZeroTest z) {
    switch (z) {
    case ZeroTest::Zero: return "Zero";
    case ZeroTest::NonZero: return "NonZero";
    case ZeroTest::Unknown: return "Unknown";
    }
    return "Unknown";
}

ZeroTest is_zero(const Expr& e, Sampler& sampler, int samples) {
    if (e.is_zero()) return ZeroTest::Zero;
    if (e.is_constant()) return ZeroTest::NonZero;
    int poles = 0;
    for (int i = 0; i < samples;) {
        Bindings at = sampler.point({e});
        try {
            if (evaluate_exact(e, at) != 0) return ZeroTest::NonZero;
            ++i;
        } catch (const EvaluationError&) {
            if (++poles > sampler.options().retries) break;
        }
    }
    return ZeroTest::Unknown;
}

ZeroTest is_zero(const Expr& e, Sampler& sampler) {
    return is_zero(e, sampler, sampler.options().samples);
}

ZeroTest is_zero(const Expr& e) {
    Sampler s;
    return is_zero(e, s);
}

}  // namespace fj
