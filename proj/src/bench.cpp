#include "tt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "tt/decomp.hpp"
#include "tt/linalg.hpp"
#include "tt/ops.hpp"
#include "tt/parallel.hpp"
#include "tt/riemannian.hpp"

namespace tt::bench {

namespace {

volatile double g_sink = 0.0;  // keeps results observable so timing survives optimization

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag) {
    return seed ^ (0xD1B54A32D192ED03ULL * (tag + 1));
}

// object-major accumulation so the value is invariant under batch chunking
double checksum_of(const TensorTrainBatch& t) {
    double s = 0.0;
    for (Index i = 0; i < t.batch_size(); ++i)
        for (Index k = 0; k < t.ndims(); ++k)
            for (double v : t.core_span(k, i)) s += v;
    return s;
}

double checksum_of(const TensorTrain& t) {
    double s = 0.0;
    for (Index k = 0; k < t.ndims(); ++k)
        for (double v : t.core(k)) s += v;
    return s;
}

std::size_t obj_bytes(const TTShape& shape, const TTRanks& ranks) {
    std::size_t n = 0;
    for (Index k = 0; k < shape.ndims(); ++k) {
        n += static_cast<std::size_t>(ranks[k] * shape.mode_dim(k) * ranks[k + 1]);
    }
    return n * sizeof(double);
}

TTRanks uniform_ranks(Index d, Index r) {
    std::vector<Index> v(static_cast<size_t>(d) + 1, r);
    v.front() = v.back() = 1;
    return TTRanks(std::move(v));
}

double quantile(const std::vector<double>& sorted, double p) {
    if (sorted.size() == 1) return sorted[0];
    double pos = p * static_cast<double>(sorted.size() - 1);
    size_t lo = static_cast<size_t>(pos);
    size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

/// One chunk's worth of inputs: the checksum contribution and the closure
/// that executes the measured operation on them.
struct Chunk {
    double checksum = 0.0;
    std::function<void()> run;
};

BenchRow drive(const BenchConfig& cfg, Index chunk_objs, double fixed_checksum,
               const std::function<Chunk(Index, Index)>& gen) {
    Index b = cfg.batch_size;
    Index chunks = (b + chunk_objs - 1) / chunk_objs;
    std::vector<double> totals(static_cast<size_t>(cfg.repeats), 0.0);
    double checksum = fixed_checksum;
    bool first = true;
    for (Index lo = 0; lo < b; lo += chunk_objs) {
        Index hi = std::min(b, lo + chunk_objs);
        Chunk chunk = gen(lo, hi);
        checksum += chunk.checksum;
        if (first) {
            for (int w = 0; w < cfg.warmup; ++w) chunk.run();
            first = false;
        }
        for (int r = 0; r < cfg.repeats; ++r) {
            auto t0 = std::chrono::steady_clock::now();
            chunk.run();
            auto t1 = std::chrono::steady_clock::now();
            totals[static_cast<size_t>(r)] +=
                std::chrono::duration<double, std::milli>(t1 - t0).count();
        }
    }
    std::vector<double> per_obj = totals;
    for (double& t : per_obj) t /= static_cast<double>(b);
    std::sort(per_obj.begin(), per_obj.end());
    BenchRow row;
    row.config = cfg;
    row.median_ms_per_object = quantile(per_obj, 0.5);
    row.p10_ms_per_object = quantile(per_obj, 0.1);
    row.p90_ms_per_object = quantile(per_obj, 0.9);
    row.input_checksum = checksum;
    row.chunks = chunks;
    return row;
}

Index pick_chunk(const BenchConfig& cfg, std::size_t fixed_bytes, std::size_t per_obj,
                 bool chunkable) {
    std::size_t budget = cfg.memory_budget_bytes;
    if (fixed_bytes + per_obj > budget) {
        throw InfeasibleConfigError(
            "op '" + cfg.op + "': a single batch member needs about " +
            std::to_string(fixed_bytes + per_obj) + " bytes, over the memory budget of " +
            std::to_string(budget));
    }
    if (!chunkable) {
        std::size_t total = fixed_bytes + per_obj * static_cast<std::size_t>(cfg.batch_size);
        if (total > budget) {
            throw InfeasibleConfigError("op '" + cfg.op + "': needs about " +
                                        std::to_string(total) +
                                        " bytes and cannot be chunked; memory budget is " +
                                        std::to_string(budget));
        }
        return cfg.batch_size;
    }
    std::size_t fit = (budget - fixed_bytes) / per_obj;
    return std::min<Index>(cfg.batch_size, std::max<Index>(1, static_cast<Index>(fit)));
}

std::uint64_t offset(std::uint64_t seed, Index lo) {
    return seed + kBatchSeedStride * static_cast<std::uint64_t>(lo);
}

void validate(const BenchConfig& cfg) {
    if (cfg.d < 1 || cfg.n < 1 || cfg.rank < 1 || cfg.inflated_rank < 1 || cfg.batch_size < 1) {
        throw std::invalid_argument("bench: d, n, ranks and batch_size must be positive");
    }
    if (cfg.repeats < 1 || cfg.warmup < 0) {
        throw std::invalid_argument("bench: repeats must be >= 1 and warmup >= 0");
    }
    if (std::find(kAllOps.begin(), kAllOps.end(), cfg.op) == kAllOps.end()) {
        std::string known;
        for (const auto& o : kAllOps) known += (known.empty() ? "" : ", ") + o;
        throw std::invalid_argument("bench: unknown op '" + cfg.op + "' (known: " + known + ")");
    }
}

}  // namespace

BenchRow run_op(const BenchConfig& cfg) {
    validate(cfg);
    parallel::set_num_threads(cfg.threads);

    TTShape vec = TTShape::tensor(std::vector<Index>(static_cast<size_t>(cfg.d), cfg.n));
    std::vector<Index> ns(static_cast<size_t>(cfg.d), cfg.n);
    TTShape mat = TTShape::matrix(ns, ns);
    TTRanks r = uniform_ranks(cfg.d, cfg.rank);
    TTRanks r2 = uniform_ranks(cfg.d, cfg.rank * cfg.rank);
    TTRanks ri = uniform_ranks(cfg.d, cfg.inflated_rank);

    if (cfg.op == "matvec") {
        std::size_t per = obj_bytes(mat, r) + obj_bytes(vec, r) + obj_bytes(vec, r2);
        Index c = pick_chunk(cfg, 0, per, true);
        return drive(cfg, c, 0.0, [&](Index lo, Index hi) {
            auto a = random_batch(hi - lo, mat, r, offset(sub_seed(cfg.seed, 0), lo));
            auto x = random_batch(hi - lo, vec, r, offset(sub_seed(cfg.seed, 1), lo));
            return Chunk{checksum_of(a) + checksum_of(x), [a = std::move(a), x = std::move(x)] {
                             auto y = matvec(a, x);
                             g_sink = y.core(0)[0];
                         }};
        });
    }
    if (cfg.op == "matmul") {
        TensorTrain bmat = random(mat, r, sub_seed(cfg.seed, 1));
        std::size_t fixed = obj_bytes(mat, r);
        std::size_t per = obj_bytes(mat, r) + obj_bytes(mat, r2);
        Index c = pick_chunk(cfg, fixed, per, true);
        return drive(cfg, c, checksum_of(bmat), [&, bmat](Index lo, Index hi) {
            auto a = random_batch(hi - lo, mat, r, offset(sub_seed(cfg.seed, 0), lo));
            return Chunk{checksum_of(a), [a = std::move(a), &bmat] {
                             auto y = matmul(a, bmat);
                             g_sink = y.core(0)[0];
                         }};
        });
    }
    if (cfg.op == "norm") {
        std::size_t per = 3 * obj_bytes(mat, ri);
        Index c = pick_chunk(cfg, 0, per, true);
        return drive(cfg, c, 0.0, [&](Index lo, Index hi) {
            auto x = random_batch(hi - lo, mat, ri, offset(cfg.seed, lo));
            // the inner-product path is pure GEMM and much faster than the
            // QR-based default at rank 100; values agree to roundoff
            return Chunk{checksum_of(x), [x = std::move(x)] {
                             Eigen::VectorXd v = frobenius_norm(x, true);
                             g_sink = v[0];
                         }};
        });
    }
    if (cfg.op == "round") {
        std::size_t per = 3 * obj_bytes(vec, ri);
        Index c = pick_chunk(cfg, 0, per, true);
        TruncationSpec spec = TruncationSpec::by_rank(cfg.rank);
        return drive(cfg, c, 0.0, [&, spec](Index lo, Index hi) {
            auto x = random_batch(hi - lo, vec, ri, offset(cfg.seed, lo));
            return Chunk{checksum_of(x), [x = std::move(x), spec] {
                             auto y = round(x, spec);
                             g_sink = y.core(0)[0];
                         }};
        });
    }
    if (cfg.op == "gram") {
        std::size_t per = obj_bytes(vec, r) + sizeof(double) * static_cast<std::size_t>(cfg.batch_size);
        Index c = pick_chunk(cfg, 0, per, false);
        return drive(cfg, c, 0.0, [&](Index lo, Index hi) {
            auto x = random_batch(hi - lo, vec, r, offset(cfg.seed, lo));
            return Chunk{checksum_of(x), [x = std::move(x)] {
                             GramMatrix g = pairwise_flat_inner(x, x);
                             g_sink = g(0, 0);
                         }};
        });
    }
    if (cfg.op == "project" || cfg.op == "project_sum") {
        TensorTrain base = random(vec, r, sub_seed(cfg.seed, 1));
        std::size_t fixed = 3 * obj_bytes(vec, r);
        std::size_t per = obj_bytes(vec, ri) + 2 * obj_bytes(vec, r);
        bool chunkable = cfg.op == "project";
        Index c = pick_chunk(cfg, fixed, per, chunkable);
        Eigen::VectorXd weights;
        if (cfg.op == "project_sum") {
            std::mt19937_64 rng(sub_seed(cfg.seed, 2));
            std::uniform_real_distribution<double> uni(-1.0, 1.0);
            weights.resize(cfg.batch_size);
            for (Index i = 0; i < cfg.batch_size; ++i) weights[i] = uni(rng);
        }
        return drive(cfg, c, checksum_of(base), [&, base, weights](Index lo, Index hi) {
            auto x = random_batch(hi - lo, vec, ri, offset(sub_seed(cfg.seed, 0), lo));
            if (cfg.op == "project") {
                return Chunk{checksum_of(x), [x = std::move(x), &base] {
                                 TangentVector t = project(x, base);
                                 g_sink = t.delta(0, 0)[0];
                             }};
            }
            return Chunk{checksum_of(x) + weights.sum(),
                         [x = std::move(x), &base, weights] {
                             TangentVector t = project_sum(x, base, weights);
                             g_sink = t.delta(0, 0)[0];
                         }};
        });
    }
    // project_matmul
    TensorTrain amat = random(mat, r, sub_seed(cfg.seed, 1));
    TensorTrain base = random(vec, r, sub_seed(cfg.seed, 2));
    std::size_t fixed = obj_bytes(mat, r) + 3 * obj_bytes(vec, r);
    std::size_t per = obj_bytes(vec, ri) + 2 * obj_bytes(vec, r);
    Index c = pick_chunk(cfg, fixed, per, true);
    return drive(cfg, c, checksum_of(amat) + checksum_of(base), [&, amat, base](Index lo, Index hi) {
        auto x = random_batch(hi - lo, vec, ri, offset(sub_seed(cfg.seed, 0), lo));
        return Chunk{checksum_of(x), [x = std::move(x), &amat, &base] {
                         TangentVector t = project_matmul(amat, x, base);
                         g_sink = t.delta(0, 0)[0];
                     }};
    });
}

BenchReport run_bench(const BenchConfig& cfg) {
    BenchReport report;
    report.rows.push_back(run_op(cfg));
    char host[256] = {0};
    if (gethostname(host, sizeof(host) - 1) == 0) report.hostname = host;
    report.threads = parallel::num_threads();
    return report;
}

namespace {

std::vector<const BenchRow*> table_order(const BenchReport& report) {
    std::vector<const BenchRow*> rows;
    rows.reserve(report.rows.size());
    bool all_table = true;
    for (const auto& r : report.rows) {
        if (std::find(kTableOps.begin(), kTableOps.end(), r.config.op) == kTableOps.end()) {
            all_table = false;
        }
    }
    bool complete = all_table;
    for (const auto& op : kTableOps) {
        bool found = false;
        for (const auto& r : report.rows)
            if (r.config.op == op) found = true;
        if (!found) complete = false;
    }
    if (complete) {
        for (const auto& op : kTableOps)
            for (const auto& r : report.rows)
                if (r.config.op == op) rows.push_back(&r);
    } else {
        for (const auto& r : report.rows) rows.push_back(&r);
    }
    return rows;
}

double round3(double x) { return std::round(x * 1000.0) / 1000.0; }

}  // namespace

std::string render_report(const BenchReport& report, ReportFormat format) {
    if (report.rows.empty()) throw std::invalid_argument("render_report: empty report");
    std::ostringstream out;
    auto rows = table_order(report);
    switch (format) {
        case ReportFormat::Csv: {
            out << "op,d,n,rank,inflated_rank,batch_size,repeats,warmup,seed,threads,chunks,"
                   "median_ms_per_object,p10_ms_per_object,p90_ms_per_object,input_checksum\n";
            for (const BenchRow* r : rows) {
                const BenchConfig& c = r->config;
                out << c.op << ',' << c.d << ',' << c.n << ',' << c.rank << ','
                    << c.inflated_rank << ',' << c.batch_size << ',' << c.repeats << ','
                    << c.warmup << ',' << c.seed << ',' << report.threads << ',' << r->chunks
                    << ',';
                char buf[128];
                std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f,%.17g", r->median_ms_per_object,
                              r->p10_ms_per_object, r->p90_ms_per_object, r->input_checksum);
                out << buf << '\n';
            }
            break;
        }
        case ReportFormat::Markdown: {
            out << "| op | batch | median ms/object | p10 | p90 | chunks |\n";
            out << "|---|---:|---:|---:|---:|---:|\n";
            for (const BenchRow* r : rows) {
                char buf[128];
                std::snprintf(buf, sizeof(buf), "%.3f | %.3f | %.3f", r->median_ms_per_object,
                              r->p10_ms_per_object, r->p90_ms_per_object);
                out << "| " << r->config.op << " | " << r->config.batch_size << " | " << buf
                    << " | " << r->chunks << " |\n";
            }
            break;
        }
        case ReportFormat::Json: {
            nlohmann::json j;
            j["hostname"] = report.hostname;
            j["threads"] = report.threads;
            j["rows"] = nlohmann::json::array();
            for (const BenchRow* r : rows) {
                const BenchConfig& c = r->config;
                nlohmann::json row;
                row["op"] = c.op;
                row["d"] = c.d;
                row["n"] = c.n;
                row["rank"] = c.rank;
                row["inflated_rank"] = c.inflated_rank;
                row["batch_size"] = c.batch_size;
                row["repeats"] = c.repeats;
                row["warmup"] = c.warmup;
                row["seed"] = c.seed;
                row["chunks"] = r->chunks;
                row["median_ms_per_object"] = round3(r->median_ms_per_object);
                row["p10_ms_per_object"] = round3(r->p10_ms_per_object);
                row["p90_ms_per_object"] = round3(r->p90_ms_per_object);
                row["input_checksum"] = r->input_checksum;
                j["rows"].push_back(row);
            }
            out << j.dump(2) << '\n';
            break;
        }
    }
    return out.str();
}

}  // namespace tt::bench
