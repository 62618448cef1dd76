#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fj/benchmarks.hpp"
#include "fj/parse.hpp"
#include "fj/report_json.hpp"
#include "fj/system_file.hpp"
#include "fj/theorem.hpp"

using namespace fj;
namespace fs = std::filesystem;

namespace {

ReductionReport bundled(const std::string& name) { return reduce(load_system_text(bundled_benchmark(name).system_text)); }

nlohmann::ordered_json full_report(const ReductionReport& r) {
    TheoremResults t{verify_theorem1(r), schur_route_check(r)};
    return emit_report(r, t, degeneracy_locus(r));
}

void collect_strings(const nlohmann::ordered_json& j, std::vector<std::string>& out) {
    if (j.is_string()) out.push_back(j.get<std::string>());
    else if (j.is_array())
        for (const auto& e : j) collect_strings(e, out);
}

std::string fixture(const std::string& name) { return std::string(FJ_SOURCE_DIR) + "/fixtures/benchmarks/" + name + ".fj"; }

fs::path scratch_dir() {
    fs::path d = fs::temp_directory_path() / ("fj_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

int run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " \"" FJREDUCE_PATH "\" " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("report has exactly the expected top-level keys") {
    for (const auto& c : bundled_benchmarks()) {
        CAPTURE(c.name);
        auto j = full_report(reduce(load_system_text(c.system_text)));
        std::vector<std::string> keys;
        for (const auto& [k, v] : j.items()) keys.push_back(k);
        CHECK(keys == std::vector<std::string>(std::begin(report_keys), std::end(report_keys)));
    }
}

TEST_CASE("report contents") {
    auto j = full_report(bundled("benchmark2"));
    CHECK(j["MatrixStatus"] == "Regular");
    CHECK(j["IterationCount"] == 1);
    CHECK(j["ExtendedMatrix"].size() == 8);
    CHECK(j["InverseExtendedMatrix"][0].size() == 8);
    CHECK(j["ExtendedSymplecticVariables"].size() == 8);
    CHECK(j["Diagnostics"].empty());
    CHECK(j["Trace"][0].contains("seed"));
    CHECK(j["Theorem1"]["verdict"] == "PASS");
    CHECK(j["Theorem1"]["schur_route"]["verdict"] == "PASS");

    auto g = full_report(bundled("gauge"));
    CHECK(g["MatrixStatus"] == "Singular");
    CHECK(g["InverseExtendedMatrix"].is_null());
    CHECK(g["Diagnostics"][0] == null_constraint_message);
    CHECK(g["Trace"].back().contains("gauge_generators"));
}

TEST_CASE("expression strings re-parse to themselves") {
    for (const auto& c : bundled_benchmarks()) {
        CAPTURE(c.name);
        auto j = full_report(reduce(load_system_text(c.system_text)));
        std::vector<std::string> exprs;
        for (const char* key : {"Constraints", "ExtendedMatrix", "ExtendedOneForm", "InverseExtendedMatrix"})
            collect_strings(j[key], exprs);
        CHECK(!exprs.empty());
        for (const auto& s : exprs) {
            CAPTURE(s);
            CHECK(parse(s).str() == s);
        }
    }
}

TEST_CASE("summary layout") {
    std::string s = summarize(bundled("benchmark2"));
    CHECK(s ==
          "System             : benchmark2\n"
          "Regularity Status  : Regular\n"
          "Extended Dimension : 8×8\n"
          "Constraint Count   : 1\n"
          "Iteration Depth    : 1\n");
    std::string g = summarize(bundled("gauge"));
    CHECK(g.find("Regularity Status  : Singular\n") != std::string::npos);
    CHECK(g.find(std::string("Diagnostic         : ") + null_constraint_message) != std::string::npos);
    CHECK(g.find("Gauge Generators   : 1\n") != std::string::npos);
    CHECK(summarize(bundled("gauge")) == g);
}

TEST_CASE("CLI exit codes") {
    fs::path dir = scratch_dir();
    std::ofstream(dir / "bad.fj") << "[system]\nname = bad\nmode = sideways\n";
    std::ofstream(dir / "undeclared.fj") << "[system]\nname = u\nmode = mechanical\n[variables]\nq\n[kinetic]\ndq^2\n"
                                            "[potential]\nm*q\n";
    CHECK(run("reduce " + fixture("benchmark1")) == 0);
    CHECK(run("reduce " + fixture("gauge")) == 2);
    CHECK(run("reduce " + (dir / "bad.fj").string()) == 3);
    CHECK(run("reduce " + (dir / "undeclared.fj").string()) == 3);
    CHECK(run("reduce " + (dir / "missing.fj").string()) == 3);
    CHECK(run("reduce") == 3);
    CHECK(run("reduce " + fixture("benchmark3") + " --max-iter 1") == 4);
    CHECK(run("verify " + fixture("benchmark3")) == 0);
    CHECK(run("verify " + fixture("gauge")) == 0);
    CHECK(run("scan " + fixture("benchmark2") + " --param k=0,1") == 0);
    CHECK(run("scan " + fixture("benchmark3") + " --param k=1") == 3);
    CHECK(run("bench") == 0);
    fs::remove_all(dir);
}

TEST_CASE("CLI output is deterministic for a fixed seed") {
    fs::path dir = scratch_dir();
    for (const char* name : {"benchmark3", "gauge"}) {
        CAPTURE(name);
        fs::path a = dir / "a.json";
        fs::path b = dir / "b.json";
        fs::path c = dir / "c.json";
        REQUIRE(run("reduce " + fixture(name) + " --seed 11 --json " + a.string()) <= 2);
        REQUIRE(run("reduce " + fixture(name) + " --seed 11 --json " + b.string()) <= 2);
        REQUIRE(run("reduce " + fixture(name) + " --json " + c.string(), "FJ_SEED=11") <= 2);
        CHECK(slurp(a) == slurp(b));
        CHECK(slurp(a) == slurp(c));
        auto j = nlohmann::ordered_json::parse(slurp(a));
        CHECK(j["Trace"][0]["seed"] == "11");
    }
    fs::path csv = dir / "scan.csv";
    REQUIRE(run("scan " + fixture("benchmark3") + " --param k=0,1,2 --param R=1,2,3 --csv " + csv.string()) == 0);
    std::string table = slurp(csv);
    CHECK(table.rfind("k,R,status,det\n", 0) == 0);
    CHECK(std::count(table.begin(), table.end(), '\n') == 10);
    fs::remove_all(dir);
}
