#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <unistd.h>

#include "tt/bench.hpp"
#include "tt/parallel.hpp"

namespace {

using tt::bench::BenchConfig;
using tt::bench::BenchReport;
using tt::bench::ReportFormat;

ReportFormat parse_format(const std::string& f) {
    if (f == "csv") return ReportFormat::Csv;
    if (f == "markdown" || f == "md") return ReportFormat::Markdown;
    if (f == "json") return ReportFormat::Json;
    throw CLI::ValidationError("--format", "expected csv, markdown or json");
}

void emit(const BenchReport& report, ReportFormat format, const std::string& out_path) {
    std::string text = tt::bench::render_report(report, format);
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << text;
}

void add_common_flags(CLI::App* cmd, BenchConfig& cfg, std::string& format,
                      std::string& out_path) {
    cmd->add_option("--d", cfg.d, "number of TT modes")->check(CLI::PositiveNumber);
    cmd->add_option("--n", cfg.n, "mode size (matrices are n x n per mode)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--rank", cfg.rank, "TT-rank of primary inputs")->check(CLI::PositiveNumber);
    cmd->add_option("--inflated-rank", cfg.inflated_rank,
                    "input rank for round/project-style ops")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--repeats", cfg.repeats, "timed repetitions")->check(CLI::PositiveNumber);
    cmd->add_option("--warmup", cfg.warmup, "untimed warmup runs")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", cfg.seed, "RNG seed for input generation");
    cmd->add_option("--threads", cfg.threads, "worker threads (0 = hardware default)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--memory-budget", cfg.memory_budget_bytes,
                    "approximate working-set budget in bytes");
    cmd->add_option("--format", format, "output format: csv, markdown, json")
        ->check(CLI::IsMember({"csv", "markdown", "md", "json"}));
    cmd->add_option("--out", out_path, "write the report to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tensor-train operation benchmarks"};
    app.require_subcommand(1);

    BenchConfig cfg;
    std::string format = "csv";
    std::string out_path;

    auto* bench = app.add_subcommand("bench", "time a single operation");
    bench->add_option("--op", cfg.op, "operation to time")
        ->required()
        ->check(CLI::IsMember(tt::bench::kAllOps));
    bench->add_option("--batch-size", cfg.batch_size, "batch size")->check(CLI::PositiveNumber);
    add_common_flags(bench, cfg, format, out_path);

    auto* all = app.add_subcommand("all", "time the six table ops at batch sizes 1 and 100");
    add_common_flags(all, cfg, format, out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // --help exits clean; bad usage is an error
    }

    try {
        if (bench->parsed()) {
            emit(tt::bench::run_bench(cfg), parse_format(format), out_path);
        } else {
            BenchReport report;
            for (tt::Index batch : {tt::Index(1), tt::Index(100)}) {
                for (const auto& op : tt::bench::kTableOps) {
                    BenchConfig c = cfg;
                    c.op = op;
                    c.batch_size = batch;
                    report.rows.push_back(tt::bench::run_op(c));
                }
            }
            char host[256] = {0};
            if (gethostname(host, sizeof(host) - 1) == 0) report.hostname = host;
            report.threads = tt::parallel::num_threads();
            emit(report, parse_format(format), out_path);
        }
    } catch (const tt::bench::InfeasibleConfigError& e) {
        std::cerr << "infeasible configuration: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
