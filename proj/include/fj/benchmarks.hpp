#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fj/reduction.hpp"

namespace fj {

struct BenchmarkCase {
    std::string name;
    std::string system_text;
    MatrixStatus expected_status = MatrixStatus::Regular;
    int expected_iterations = 0;
    /// Variable order of the golden matrix.
    std::vector<std::string> variables;
    /// Golden inverse entries; the matrix is prefactor times these.
    std::optional<std::vector<std::vector<std::string>>> golden_inverse;
    std::string prefactor = "1";
};

/// Parses the golden JSON that accompanies a system file.
BenchmarkCase make_benchmark(const std::string& name, const std::string& system_text, const std::string& golden_json);

/// The cases shipped under fixtures/, embedded at build time.
std::vector<BenchmarkCase> bundled_benchmarks();
BenchmarkCase bundled_benchmark(const std::string& name);

struct BenchmarkDiff {
    std::string name;
    std::vector<std::string> differences;
    std::optional<ReductionReport> report;
    double seconds = 0;

    bool ok() const { return differences.empty(); }
};

BenchmarkDiff run_benchmark(const BenchmarkCase& c, const ReduceOptions& options = {});

}  // namespace fj
