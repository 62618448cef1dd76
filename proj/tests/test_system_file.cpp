#include <doctest.h>

#include <random>

#include "fj/benchmarks.hpp"
#include "fj/errors.hpp"
#include "fj/parse.hpp"
#include "fj/system_file.hpp"
#include "fuzz_systems.hpp"

using namespace fj;

namespace {

const char* oscillator = R"(# one degree of freedom
[system]
name = oscillator
mode = mechanical
notes = unit mass and stiffness

[variables]
q

[kinetic]
1/2*dq^2

[potential]
1/2*q^2
)";

int error_line(const std::string& text) {
    try {
        load_system_text(text);
    } catch (const SystemFileError& e) {
        return e.line();
    }
    return -1;
}

std::string error_text(const std::string& text) {
    try {
        load_system_text(text);
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("load a mechanical system") {
    SystemDefinition d = load_system_text(oscillator);
    CHECK(d.name == "oscillator");
    CHECK(d.mode == Mode::Mechanical);
    CHECK(d.notes == "unit mass and stiffness");
    CHECK(d.variables == std::vector<std::string>{"q"});
    CHECK(d.multipliers.empty());
    CHECK(d.kinetic == parse("dq^2/2"));
    CHECK(d.potential == parse("q^2/2"));
}

TEST_CASE("load a first-order system") {
    SystemDefinition d = load_system_text(R"([system]
name = fo
mode = first-order
[variables]
x, y, z
[parameters]
c
[oneform]
x = c*y
z = 0
[potential]
x^2 +
  y^2
)");
    CHECK(d.mode == Mode::FirstOrder);
    CHECK(d.one_form.size() == 1);
    CHECK(d.one_form.at("x") == parse("c*y"));
    CHECK(d.potential == parse("x^2 + y^2"));
}

TEST_CASE("load the bundled systems") {
    SystemDefinition d = load_system_text(bundled_benchmark("benchmark3").system_text);
    CHECK(d.variables == std::vector<std::string>{"t1", "t2", "t3", "X", "Y"});
    CHECK(d.parameters == std::vector<std::string>{"k", "R"});
    CHECK(d.kinetic.depends_on(Expr::symbol("R")));
}

TEST_CASE("undeclared identifiers are named with their location") {
    std::string text = oscillator;
    text.replace(text.find("1/2*q^2"), 7, "1/2*m*q^2");
    std::string msg = error_text(text);
    CHECK(msg.find("'m'") != std::string::npos);
    CHECK(msg.find("line 14") != std::string::npos);
    CHECK(msg.find("column 5") != std::string::npos);
}

TEST_CASE("malformed files") {
    const std::string sys = "[system]\nname = s\nmode = mechanical\n";
    CHECK(error_text(sys + "[variables]\nq\n[kinetic]\ndq^2\n").find("missing section [potential]") != std::string::npos);
    CHECK(error_text(sys + "[variables]\nq, q\n[kinetic]\ndq^2\n[potential]\nq\n").find("duplicate declaration") !=
          std::string::npos);
    CHECK(error_line(sys + "[variables]\nq\n[parameters]\nq\n[kinetic]\ndq^2\n[potential]\nq\n") == 7);
    CHECK(error_line(sys + "[variables]\nq\n[variables]\np\n") == 6);
    CHECK(error_line(sys + "[variables]\nq\n[kinetic]\ndq^2 +\n[potential]\nq\n") > 0);
    CHECK(error_text(sys + "[variables]\nq\n[kinetic]\ndq^2\n[potential]\ndq*q\n").find("velocity 'dq'") !=
          std::string::npos);
    CHECK(error_text("[system]\nname = s\n[variables]\nq\n[kinetic]\ndq^2\n[potential]\nq\n").find("missing mode") !=
          std::string::npos);
    CHECK(error_text(sys + "[variables]\nq\n[oneform]\nq = 1\n[potential]\nq\n").find("not allowed") !=
          std::string::npos);
    CHECK(error_line("q\n[system]\n") == 1);
    CHECK(error_text(sys + "[variables]\nq\n[kinetic]\nfoo(dq)\n[potential]\nq\n").find("foo") != std::string::npos);
    CHECK_THROWS_AS(load_system_file("/nonexistent/system.fj"), InputError);
}

TEST_CASE("print and load round trip") {
    for (const auto& c : bundled_benchmarks()) {
        CAPTURE(c.name);
        SystemDefinition d = load_system_text(c.system_text);
        CHECK(load_system_text(print_system(d)) == d);
    }
    SystemDefinition fo = load_system_text("[system]\nname = fo\nmode = first-order\n[variables]\nx, y\n"
                                           "[oneform]\nx = y^2*sin(x)\n[potential]\ncos(x + y)\n");
    CHECK(load_system_text(print_system(fo)) == fo);
}

TEST_CASE("property: round trip on random systems") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        SystemDefinition d = fuzz::random_system(rng, i);
        std::string text = print_system(d);
        CAPTURE(text);
        SystemDefinition back = load_system_text(text);
        CHECK(back == d);
        CHECK(print_system(back) == text);
    }
}
