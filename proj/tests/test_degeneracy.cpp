#include <doctest.h>

#include <algorithm>

#include "fj/benchmarks.hpp"
#include "fj/degeneracy.hpp"
#include "fj/errors.hpp"
#include "fj/parse.hpp"
#include "fj/system_file.hpp"

using namespace fj;

namespace {

Expr P(const char* s) { return parse(s); }

SystemDefinition bundled(const std::string& name) { return load_system_text(bundled_benchmark(name).system_text); }

SystemDefinition specialize(SystemDefinition d, const std::vector<std::string>& names, const std::vector<Rational>& values) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        Expr s = Expr::symbol(names[i]);
        Expr v(values[i]);
        d.kinetic = substitute(d.kinetic, s, v);
        d.potential = substitute(d.potential, s, v);
        for (auto& [var, a] : d.one_form) a = substitute(a, s, v);
        d.parameters.erase(std::find(d.parameters.begin(), d.parameters.end(), names[i]));
    }
    return d;
}

bool has_condition(const DegeneracyReport& r, const Expr& e) {
    return std::find(r.vanishing_conditions.begin(), r.vanishing_conditions.end(), e) != r.vanishing_conditions.end();
}

}  // namespace

TEST_CASE("square-free factors") {
    Expr p = P("3*k*(x + 1)^2*(y - 2)^3");
    Rational content;
    auto fs = square_free_factors(p.numerator(), {"k"}, content);
    CHECK(content == 3);
    Poly rebuilt(content);
    for (const auto& [f, m] : fs) rebuilt *= f.pow(m);
    CHECK(rebuilt == p.numerator());
    std::vector<std::pair<std::string, unsigned>> seen;
    for (const auto& [f, m] : fs) seen.emplace_back(Expr(RatFun{f, Poly(1)}).str(), m);
    std::sort(seen.begin(), seen.end());
    CHECK(seen == std::vector<std::pair<std::string, unsigned>>{{"k", 1}, {"x + 1", 2}, {"y - 2", 3}});
}

TEST_CASE("square-free factors of a repeated mixed factor") {
    Expr p = P("(x^2 - y)^2*(x + y)");
    Rational content;
    auto fs = square_free_factors(p.numerator(), {}, content);
    Poly rebuilt(content);
    for (const auto& [f, m] : fs) rebuilt *= f.pow(m);
    CHECK(rebuilt == p.numerator());
    unsigned max_m = 0;
    for (const auto& fm : fs) max_m = std::max(max_m, fm.second);
    CHECK(max_m == 2);
}

TEST_CASE("degeneracy of the bundled cases") {
    SUBCASE("parameter-free system has no conditions") {
        DegeneracyReport d = degeneracy_locus(reduce(bundled("benchmark1")));
        CHECK(d.vanishing_conditions.empty());
        CHECK(d.product() == d.determinant);
    }
    SUBCASE("the k-scaled constraint gives a k^2 factor") {
        DegeneracyReport d = degeneracy_locus(reduce(bundled("benchmark2")));
        CHECK(d.determinant == P("16*k^2"));
        CHECK(d.product() == d.determinant);
        CHECK(has_condition(d, P("k")));
        bool found = false;
        for (const auto& f : d.factors)
            if (f.factor == P("k")) {
                found = true;
                CHECK(f.multiplicity == 2);
                CHECK(f.parameter_only);
                CHECK_FALSE(f.denominator);
            }
        CHECK(found);
    }
    SUBCASE("benchmark3 vanishes with k") {
        DegeneracyReport d = degeneracy_locus(reduce(bundled("benchmark3")));
        CHECK(d.product() == d.determinant);
        CHECK(has_condition(d, P("k")));
    }
    SUBCASE("singular systems have a zero determinant") {
        DegeneracyReport d = degeneracy_locus(reduce(bundled("gauge")));
        CHECK(d.determinant.is_zero());
    }
}

TEST_CASE("degeneracy of a determinant with a pole") {
    DegeneracyReport d = degeneracy_locus(P("k^2*(x + 1)/R^2"), {"k", "R"});
    CHECK(d.product() == d.determinant);
    CHECK(has_condition(d, P("k")));
    CHECK_FALSE(has_condition(d, P("R")));
    bool pole = false;
    for (const auto& f : d.factors) pole |= f.denominator && f.factor == P("R") && f.multiplicity == 2;
    CHECK(pole);
}

TEST_CASE("scan grid cardinality and order") {
    ReductionReport r = reduce(bundled("benchmark3"));
    Grid g{{"k", {0, 1, 2}}, {"R", {1, 2, 3}}};
    ScanTable t = scan(r, g);
    REQUIRE(t.rows.size() == 9);
    CHECK(t.parameters == std::vector<std::string>{"k", "R"});
    CHECK(t.rows[0].point == std::vector<Rational>{0, 1});
    CHECK(t.rows[1].point == std::vector<Rational>{0, 2});
    CHECK(t.rows[3].point == std::vector<Rational>{1, 1});
    CHECK(t.rows[0].status == "Singular");
    CHECK(t.rows[4].status == "Regular");
    std::string csv = t.csv();
    CHECK(csv.rfind("k,R,status,det\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
}

TEST_CASE("scan rejects uncovered parameters") {
    ReductionReport r = reduce(bundled("benchmark3"));
    CHECK_THROWS_AS(scan(r, Grid{{"k", {1}}}), InputError);
}

TEST_CASE("scan marks poles") {
    ReductionReport r = reduce(bundled("benchmark3"));
    ScanTable t = scan(r, Grid{{"k", {1}}, {"R", {0}}});
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].status == "pole");
    CHECK(t.rows[0].det.empty());
}

TEST_CASE("scan agrees with reducing the specialized system") {
    const std::vector<std::pair<std::string, Grid>> grids{
        {"benchmark1", {}},
        {"benchmark2", {{"k", {-1, 0, Rational(1, 2), 2, 3}}}},
        {"benchmark3", {{"k", {0, 1, 2}}, {"R", {Rational(1, 2), 3}}}},
        {"gauge", {{"k", {-2, 0, 1, 5, 7}}}},
    };
    for (const auto& [name, grid] : grids) {
        CAPTURE(name);
        SystemDefinition d = bundled(name);
        ScanTable t = scan(reduce(d), grid);
        int checked = 0;
        for (const auto& row : t.rows) {
            if (row.status == "pole") continue;
            CAPTURE(row.det);
            ReductionReport s = reduce(specialize(d, t.parameters, row.point));
            CHECK(std::string(status_name(s.status)) == row.status);
            if (s.status == MatrixStatus::Regular) CHECK(determinant(s.extended_matrix).str() == row.det);
            ++checked;
        }
        CHECK(checked >= std::min<int>(5, static_cast<int>(t.rows.size())));
    }
}
