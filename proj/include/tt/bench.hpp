#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tt/shape.hpp"

namespace tt::bench {

/// Raised for configurations that cannot be timed without densification or
/// without blowing the memory budget even after batch chunking.
class InfeasibleConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string> kTableOps = {"matvec", "matmul", "norm",
                                                   "round",  "gram",   "project"};
inline const std::vector<std::string> kAllOps = {"matvec", "matmul",      "norm",
                                                 "round",  "gram",        "project",
                                                 "project_sum", "project_matmul"};

struct BenchConfig {
    std::string op = "matvec";
    Index d = 10;              // number of TT factors
    Index n = 10;              // mode size (matrices are n x n per mode)
    Index rank = 10;           // TT-rank of the primary inputs
    Index inflated_rank = 100; // input rank for round / project-style ops
    Index batch_size = 100;
    int repeats = 30;
    int warmup = 5;
    std::uint64_t seed = 0;
    int threads = 0;           // 0 = hardware default
    /// Results larger than this are produced in batch chunks.
    std::size_t memory_budget_bytes = std::size_t(1) << 30;
};

struct BenchRow {
    BenchConfig config;
    double median_ms_per_object = 0.0;
    double p10_ms_per_object = 0.0;
    double p90_ms_per_object = 0.0;
    double input_checksum = 0.0;
    Index chunks = 1;  // >1 when the batch was processed in slabs
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::string hostname;
    int threads = 0;
};

enum class ReportFormat { Csv, Markdown, Json };

/// Generate seeded inputs, run warmup + timed repeats of config.op and
/// report per-object times (wall time divided by batch size).
BenchRow run_op(const BenchConfig& config);
BenchReport run_bench(const BenchConfig& config);

std::string render_report(const BenchReport& report, ReportFormat format);

}  // namespace tt::bench
