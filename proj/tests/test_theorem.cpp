#include <doctest.h>

#include <random>

#include "fj/benchmarks.hpp"
#include "fj/errors.hpp"
#include "fj/parse.hpp"
#include "fj/system_file.hpp"
#include "fj/theorem.hpp"
#include "fuzz_systems.hpp"

using namespace fj;

namespace {

Expr P(const char* s) { return parse(s); }

ReductionReport bundled(const std::string& name) { return reduce(load_system_text(bundled_benchmark(name).system_text)); }

}  // namespace

TEST_CASE("poisson bracket examples") {
    const std::vector<std::pair<std::string, std::string>> pairs{{"q", "p"}, {"x", "px"}};
    CHECK(poisson_bracket(P("q"), P("p"), pairs) == Expr(1));
    CHECK(poisson_bracket(P("p"), P("q"), pairs) == Expr(-1));
    CHECK(poisson_bracket(P("q"), P("x"), pairs).is_zero());
    CHECK(poisson_bracket(P("q^2"), P("p*x"), pairs) == P("2*q*x"));
    CHECK(poisson_bracket(P("sin(q)"), P("p"), pairs) == P("cos(q)"));
    CHECK(poisson_bracket(P("k*q"), P("p"), pairs) == P("k"));
}

TEST_CASE("bracket matrix of a canonical pair of constraints") {
    // With Omega1 = q and Omega2 = p, C = [[0, 1], [-1, 0]].
    const std::vector<std::pair<std::string, std::string>> pairs{{"q", "p"}};
    std::vector<Expr> fs{P("q"), P("p")};
    SymMatrix c(2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) c(i, j) = poisson_bracket(fs[i], fs[j], pairs);
    CHECK(c == SymMatrix::from_rows({{0, 1}, {-1, 0}}));
    CHECK(determinant(c) == Expr(1));
}

TEST_CASE("bracket matrix of the bundled cases") {
    SUBCASE("benchmark2") {
        BracketMatrix c = constraint_bracket_matrix(bundled("benchmark2"));
        CHECK(c.entries.is_antisymmetric());
        // phi_y4 plus one Omega.
        CHECK(c.functions.size() == 2);
        CHECK(is_zero(determinant(c.entries)) == ZeroTest::NonZero);
    }
    SUBCASE("benchmark3") {
        BracketMatrix c = constraint_bracket_matrix(bundled("benchmark3"));
        CHECK(c.entries.is_antisymmetric());
        // phi_X, phi_Y and two Omegas.
        CHECK(c.functions.size() == 4);
        CHECK(is_zero(determinant(c.entries)) == ZeroTest::NonZero);
    }
    SUBCASE("gauge") {
        BracketMatrix c = constraint_bracket_matrix(bundled("gauge"));
        CHECK(c.entries.is_antisymmetric());
        CHECK(determinant(c.entries).is_zero());
    }
}

TEST_CASE("verdicts on the bundled cases") {
    for (const auto& b : bundled_benchmarks()) {
        CAPTURE(b.name);
        ReductionReport r = reduce(load_system_text(b.system_text));
        Verdict v = verify_theorem1(r);
        CHECK(v.pass);
        CHECK(v.points >= default_trials);
        CHECK(v.disagreements.empty());
        const ZeroTest expected = b.expected_status == MatrixStatus::Regular ? ZeroTest::NonZero : ZeroTest::Zero;
        CHECK(v.lhs_class == expected);
        CHECK(v.rhs_class == expected);
        Verdict s = schur_route_check(r);
        CHECK(s.pass);
        CHECK(s.points >= default_trials);
    }
}

TEST_CASE("verdicts are reproducible from the report seed") {
    ReductionReport r = bundled("benchmark3");
    Verdict a = verify_theorem1(r);
    Verdict b = verify_theorem1(r);
    CHECK(a.lhs == b.lhs);
    CHECK(a.rhs == b.rhs);
    CHECK(a.points == b.points);
}

TEST_CASE("schur route with an empty sector compares the whole matrix") {
    SystemDefinition d = load_system_text(R"([system]
name = flat
mode = first-order
[variables]
x, y
[oneform]
[potential]
x*y
)");
    ReductionReport r = reduce(d);
    CHECK(r.status == MatrixStatus::Singular);
    Verdict s = schur_route_check(r);
    CHECK(s.pass);
    CHECK(s.lhs_class == ZeroTest::Zero);
    CHECK(verify_theorem1(r).pass);
}

TEST_CASE("property: the two determinants co-vanish on random systems") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 30; ++i) {
        SystemDefinition d = fuzz::random_system(rng, i);
        CAPTURE(print_system(d));
        ReduceOptions o;
        o.max_iterations = 16;
        ReductionReport r = reduce(d, o);
        Verdict v = verify_theorem1(r);
        CHECK(v.pass);
        CHECK(v.points >= default_trials);
    }
}
