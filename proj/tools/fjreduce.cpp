// Command-line front end: reduce, verify, scan, bench.
//
// Exit codes: 0 Regular / success, 1 verification or benchmark failure,
// 2 Singular, 3 input error, 4 internal or degenerate-stratum error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "fj/benchmarks.hpp"
#include "fj/degeneracy.hpp"
#include "fj/errors.hpp"
#include "fj/parse.hpp"
#include "fj/reduction.hpp"
#include "fj/report_json.hpp"
#include "fj/system_file.hpp"
#include "fj/theorem.hpp"

namespace {

constexpr int exit_regular = 0;
constexpr int exit_failure = 1;
constexpr int exit_singular = 2;
constexpr int exit_input = 3;
constexpr int exit_internal = 4;

std::uint64_t default_seed_from_env() {
    const char* s = std::getenv("FJ_SEED");
    if (s == nullptr || *s == '\0') return fj::default_seed;
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(s, &used);
        if (used != std::string(s).size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw fj::InputError(std::string("FJ_SEED is not an unsigned integer: ") + s);
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw fj::InputError("cannot write '" + path + "'");
    out << text;
}

fj::Rational parse_rational(const std::string& text) {
    auto v = fj::parse(text).as_rational();
    if (!v) throw fj::InputError("'" + text + "' is not a rational number");
    return *v;
}

fj::Grid parse_grid(const std::vector<std::string>& specs) {
    fj::Grid grid;
    for (const auto& spec : specs) {
        auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) throw fj::InputError("expected name=v1,v2,... in '" + spec + "'");
        std::string name = spec.substr(0, eq);
        std::vector<fj::Rational> values;
        std::string rest = spec.substr(eq + 1);
        std::size_t start = 0;
        while (start <= rest.size()) {
            auto comma = rest.find(',', start);
            std::string item = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            values.push_back(parse_rational(item));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        grid.emplace_back(name, values);
    }
    return grid;
}

int status_code(const fj::ReductionReport& r) {
    return r.status == fj::MatrixStatus::Regular ? exit_regular : exit_singular;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Faddeev-Jackiw reduction by matrix bordering"};
    app.require_subcommand(1);

    std::string file;
    std::string json_out;
    std::string csv_out;
    int max_iter = 8;
    int trials = fj::default_trials;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> params;

    auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a system and print a summary");
    reduce_cmd->add_option("file", file, "System definition file")->required();
    reduce_cmd->add_option("--max-iter", max_iter, "Iteration cap")->check(CLI::PositiveNumber);
    reduce_cmd->add_option("--seed", seed, "Sampling seed (default: FJ_SEED or built-in)");
    reduce_cmd->add_option("--json", json_out, "Write the full JSON report here");

    auto* verify_cmd = app.add_subcommand("verify", "Check the bracket and Schur routes on a reduced system");
    verify_cmd->add_option("file", file, "System definition file")->required();
    verify_cmd->add_option("--trials", trials, "Shared sample points")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", seed, "Sampling seed");
    verify_cmd->add_option("--max-iter", max_iter, "Iteration cap")->check(CLI::PositiveNumber);

    auto* scan_cmd = app.add_subcommand("scan", "Evaluate the final determinant on a parameter grid");
    scan_cmd->add_option("file", file, "System definition file")->required();
    scan_cmd->add_option("--param", params, "name=v1,v2,... (repeatable)")->required();
    scan_cmd->add_option("--csv", csv_out, "Write the table here instead of stdout");
    scan_cmd->add_option("--seed", seed, "Sampling seed");

    auto* bench_cmd = app.add_subcommand("bench", "Run the bundled benchmarks against their golden matrices");
    bench_cmd->add_option("--seed", seed, "Sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_input;
    }

    try {
        fj::ReduceOptions opts;
        opts.max_iterations = max_iter;
        opts.seed = seed ? *seed : default_seed_from_env();

        if (*reduce_cmd) {
            fj::SystemDefinition def = fj::load_system_file(file);
            fj::ReductionReport r = fj::reduce(def, opts);
            std::cout << fj::summarize(r);
            if (!json_out.empty()) {
                fj::TheoremResults t{fj::verify_theorem1(r), fj::schur_route_check(r)};
                auto j = fj::emit_report(r, t, fj::degeneracy_locus(r));
                write_file(json_out, j.dump(2) + "\n");
            }
            return status_code(r);
        }
        if (*verify_cmd) {
            fj::SystemDefinition def = fj::load_system_file(file);
            fj::ReductionReport r = fj::reduce(def, opts);
            fj::Verdict b = fj::verify_theorem1(r, trials);
            fj::Verdict s = fj::schur_route_check(r, trials);
            for (const auto* v : {&b, &s})
                std::cout << (v->pass ? "PASS" : "FAIL") << "  " << v->route << "  det " << fj::to_string(v->lhs_class)
                          << " / " << fj::to_string(v->rhs_class) << "  points " << v->points << "  disagreements "
                          << v->disagreements.size() << "\n";
            return b.pass && s.pass ? exit_regular : exit_failure;
        }
        if (*scan_cmd) {
            fj::SystemDefinition def = fj::load_system_file(file);
            fj::Grid grid = parse_grid(params);
            fj::ReductionReport r = fj::reduce(def, opts);
            std::string csv = fj::scan(r, grid).csv();
            if (csv_out.empty()) std::cout << csv;
            else write_file(csv_out, csv);
            return exit_regular;
        }
        if (*bench_cmd) {
            bool all = true;
            for (const auto& c : fj::bundled_benchmarks()) {
                fj::BenchmarkDiff d = fj::run_benchmark(c, opts);
                std::cout << (d.ok() ? "PASS" : "FAIL") << "  " << d.name << "\n";
                for (const auto& diff : d.differences) std::cout << "      " << diff << "\n";
                all = all && d.ok();
            }
            return all ? exit_regular : exit_failure;
        }
    } catch (const fj::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const fj::DegenerateStratumError& e) {
        std::cerr << "degenerate stratum: " << e.what() << " [" << e.expression() << "]\n";
        return exit_internal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_internal;
}
