#pragma once

// Exact evaluation and the sampling zero test.
//
// Symbols are bound to rationals. Each trig argument u is bound to a rational
// t, and (sin u, cos u) evaluate to the rational circle point
//     (2t/(1+t^2), (1-t^2)/(1+t^2)),
// so evaluation never leaves Q and respects sin^2 + cos^2 = 1.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fj/expr.hpp"

namespace fj {

struct Bindings {
    std::map<std::string, Rational> symbols;
    /// Keyed by the rendered trig argument ("t1" for sin(t1)).
    std::map<std::string, Rational> angles;
};

/// Throws EvaluationError for unbound symbols or a vanishing denominator.
Rational evaluate_exact(const Expr& e, const Bindings& at);

/// Symbols and trig arguments that evaluate_exact needs.
void required_bindings(const Expr& e, std::vector<std::string>& symbols, std::vector<std::string>& angles);

struct SamplingOptions {
    int samples = 16;
    /// Extra draws allowed when a sample hits a pole.
    int retries = 32;
    long magnitude = 1000000;
};

inline constexpr std::uint64_t default_seed = 20240917;

class Sampler {
public:
    explicit Sampler(std::uint64_t seed = default_seed, SamplingOptions options = {});

    const SamplingOptions& options() const noexcept { return options_; }
    Rational draw();
    /// Adds random values for whatever `e` needs and `at` lacks, in name order.
    void complete(Bindings& at, const Expr& e);
    /// A fresh point covering every expression in `exprs`.
    Bindings point(const std::vector<Expr>& exprs);

private:
    SamplingOptions options_;
    std::mt19937_64 rng_;
};

enum class ZeroTest { Zero, NonZero, Unknown };

const char* to_string(ZeroTest z);

ZeroTest is_zero(const Expr& e, Sampler& sampler);
ZeroTest is_zero(const Expr& e, Sampler& sampler, int samples);
ZeroTest is_zero(const Expr& e);

}  // namespace fj
