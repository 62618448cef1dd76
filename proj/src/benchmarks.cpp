#include "fj/benchmarks.hpp"

#include <chrono>

#include <json.hpp>

#include "fj/errors.hpp"
#include "fj/parse.hpp"
#include "fj/system_file.hpp"

namespace fj {

namespace detail {
struct EmbeddedFixture {
    const char* name;
    const char* system_text;
    const char* golden_json;
};
const std::vector<EmbeddedFixture>& embedded_fixtures();
}  // namespace detail

BenchmarkCase make_benchmark(const std::string& name, const std::string& system_text, const std::string& golden_json) {
    nlohmann::json g = nlohmann::json::parse(golden_json);
    BenchmarkCase c;
    c.name = name;
    c.system_text = system_text;
    std::string status = g.at("expected_status");
    if (status != "Regular" && status != "Singular") throw InputError("bad expected_status in golden file " + name);
    c.expected_status = status == "Regular" ? MatrixStatus::Regular : MatrixStatus::Singular;
    c.expected_iterations = g.at("expected_iterations");
    c.variables = g.at("variables").get<std::vector<std::string>>();
    c.prefactor = g.value("prefactor", "1");
    if (!g.at("inverse").is_null()) {
        c.golden_inverse = g.at("inverse").get<std::vector<std::vector<std::string>>>();
        if (c.golden_inverse->size() != c.variables.size())
            throw InputError("golden matrix of " + name + " does not match its variable list");
        for (const auto& row : *c.golden_inverse)
            if (row.size() != c.variables.size()) throw InputError("golden matrix of " + name + " is not square");
    }
    return c;
}

std::vector<BenchmarkCase> bundled_benchmarks() {
    std::vector<BenchmarkCase> out;
    for (const auto& f : detail::embedded_fixtures()) out.push_back(make_benchmark(f.name, f.system_text, f.golden_json));
    return out;
}

BenchmarkCase bundled_benchmark(const std::string& name) {
    for (const auto& f : detail::embedded_fixtures())
        if (name == f.name) return make_benchmark(f.name, f.system_text, f.golden_json);
    throw InputError("no bundled benchmark named '" + name + "'");
}

BenchmarkDiff run_benchmark(const BenchmarkCase& c, const ReduceOptions& options) {
    BenchmarkDiff d;
    d.name = c.name;
    auto start = std::chrono::steady_clock::now();
    try {
        d.report = reduce(load_system_text(c.system_text), options);
    } catch (const Error& e) {
        d.differences.push_back(std::string("reduction failed: ") + e.what());
        return d;
    }
    d.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const ReductionReport& r = *d.report;
    if (r.status != c.expected_status)
        d.differences.push_back("status " + std::string(status_name(r.status)) + ", expected " +
                                std::string(status_name(c.expected_status)));
    if (r.iteration_count != c.expected_iterations)
        d.differences.push_back("iteration count " + std::to_string(r.iteration_count) + ", expected " +
                                std::to_string(c.expected_iterations));
    const std::size_t n = r.extended_variables.size();
    if (c.variables.size() != n) {
        d.differences.push_back("extended dimension " + std::to_string(n) + ", expected " +
                                std::to_string(c.variables.size()));
        return d;
    }
    std::vector<std::size_t> perm;
    for (const auto& v : c.variables) {
        auto i = r.extended_variables.index_of(v);
        if (!i) {
            d.differences.push_back("golden variable '" + v + "' missing from the extended variables");
            return d;
        }
        perm.push_back(*i);
    }
    if (r.inverse_extended_matrix) {
        if (r.extended_matrix * *r.inverse_extended_matrix != SymMatrix::identity(n))
            d.differences.push_back("extended matrix times inverse is not the identity");
    }
    if (c.golden_inverse) {
        if (!r.inverse_extended_matrix) {
            d.differences.push_back("no inverse to compare with the golden matrix");
            return d;
        }
        const Expr scale = parse(c.prefactor);
        const SymMatrix& inv = *r.inverse_extended_matrix;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Expr want = scale * parse((*c.golden_inverse)[i][j]);
                const Expr& got = inv(perm[i], perm[j]);
                if (want != got)
                    d.differences.push_back("inverse(" + c.variables[i] + ", " + c.variables[j] + ") = " + got.str() +
                                            ", expected " + want.str());
            }
    }
    return d;
}

}  // namespace fj
