#include "tt/ops.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <stdexcept>

#include "internal.hpp"
#include "tt/parallel.hpp"

namespace tt {

using namespace internal;

namespace {

constexpr std::uint64_t kSeedMix = kBatchSeedStride;

std::uint64_t splitmix64(std::uint64_t x) {
    x += kSeedMix;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Total dense element count without overflowing (saturates).
long double dense_elements(const TTShape& shape, Index batch = 1) {
    long double p = static_cast<long double>(batch);
    for (Index k = 0; k < shape.ndims(); ++k) p *= static_cast<long double>(shape.mode_dim(k));
    return p;
}

void check_guard(const TTShape& shape, Index batch, Index guard) {
    long double count = dense_elements(shape, batch);
    if (count > static_cast<long double>(guard)) {
        throw std::invalid_argument("full: dense reconstruction would hold " +
                                    std::to_string(static_cast<double>(count)) +
                                    " elements, above the guard of " + std::to_string(guard));
    }
}

// ---------------------------------------------------------------------------
// broadcasting driver

template <class Kernel>
std::vector<std::vector<double>> run_pairs(Index b, const TTShape& oshape, const TTRanks& oranks,
                                           const BatchArg& a, const BatchArg& bb, Kernel kernel) {
    auto cores = alloc_cores(b, oshape, oranks);
    parallel::for_range(b, [&](Index lo, Index hi) {
        for (Index i = lo; i < hi; ++i) {
            auto out = object_ptrs(cores, i, oshape, oranks);
            kernel(a.at(a.b == 1 ? 0 : i), bb.at(bb.b == 1 ? 0 : i), out);
        }
    });
    return cores;
}

// ---------------------------------------------------------------------------
// add

TTRanks add_ranks(const TTRanks& a, const TTRanks& b) {
    std::vector<Index> r(static_cast<size_t>(a.order()) + 1, 1);
    for (Index k = 1; k < a.order(); ++k) r[static_cast<size_t>(k)] = a[k] + b[k];
    return TTRanks(std::move(r));
}

void add_kernel(const TTView& a, const TTView& b, const std::vector<double*>& out,
                const TTShape& shape, const TTRanks& oranks) {
    Index d = shape.ndims();
    for (Index k = 0; k < d; ++k) {
        Index mode = shape.mode_dim(k);
        Index ra0 = a.rank(k), ra1 = a.rank(k + 1);
        Index rb0 = b.rank(k), rb1 = b.rank(k + 1);
        Index R1 = oranks[k + 1];
        Index o0 = (k == 0) ? 0 : ra0;
        Index o1 = (k == d - 1) ? 0 : ra1;
        const double* A = a.core(k);
        const double* B = b.core(k);
        double* O = out[static_cast<size_t>(k)];
        for (Index a0 = 0; a0 < ra0; ++a0)
            for (Index x = 0; x < mode; ++x) {
                double* dst = O + (a0 * mode + x) * R1;
                const double* src = A + (a0 * mode + x) * ra1;
                for (Index b1 = 0; b1 < ra1; ++b1) dst[b1] += src[b1];
            }
        for (Index a0 = 0; a0 < rb0; ++a0)
            for (Index x = 0; x < mode; ++x) {
                double* dst = O + ((o0 + a0) * mode + x) * R1 + o1;
                const double* src = B + (a0 * mode + x) * rb1;
                for (Index b1 = 0; b1 < rb1; ++b1) dst[b1] += src[b1];
            }
    }
}

std::vector<std::vector<double>> add_impl(const BatchArg& a, const BatchArg& b, Index& bsize,
                                          TTRanks& oranks) {
    check_same_shape(*a.shape, *b.shape, "add");
    bsize = broadcast_size(a.b, b.b);
    oranks = add_ranks(*a.ranks, *b.ranks);
    const TTShape& shape = *a.shape;
    TTRanks captured = oranks;
    return run_pairs(bsize, shape, oranks, a, b,
                     [&shape, captured](const TTView& x, const TTView& y,
                                        const std::vector<double*>& out) {
                         add_kernel(x, y, out, shape, captured);
                     });
}

// ---------------------------------------------------------------------------
// multiply

TTRanks mul_ranks(const TTRanks& a, const TTRanks& b) {
    std::vector<Index> r(static_cast<size_t>(a.order()) + 1);
    for (Index k = 0; k <= a.order(); ++k) r[static_cast<size_t>(k)] = a[k] * b[k];
    return TTRanks(std::move(r));
}

void mul_kernel(const TTView& a, const TTView& b, const std::vector<double*>& out,
                const TTShape& shape) {
    Index d = shape.ndims();
    for (Index k = 0; k < d; ++k) {
        Index mode = shape.mode_dim(k);
        Index ra0 = a.rank(k), ra1 = a.rank(k + 1);
        Index rb0 = b.rank(k), rb1 = b.rank(k + 1);
        const double* A = a.core(k);
        const double* B = b.core(k);
        double* O = out[static_cast<size_t>(k)];
        for (Index a1 = 0; a1 < ra0; ++a1)
            for (Index a2 = 0; a2 < rb0; ++a2)
                for (Index x = 0; x < mode; ++x) {
                    const double* arow = A + (a1 * mode + x) * ra1;
                    const double* brow = B + (a2 * mode + x) * rb1;
                    double* orow = O + ((a1 * rb0 + a2) * mode + x) * (ra1 * rb1);
                    for (Index b1 = 0; b1 < ra1; ++b1) {
                        double alpha = arow[b1];
                        double* dst = orow + b1 * rb1;
                        for (Index b2 = 0; b2 < rb1; ++b2) dst[b2] = alpha * brow[b2];
                    }
                }
    }
}

std::vector<std::vector<double>> mul_impl(const BatchArg& a, const BatchArg& b, Index& bsize,
                                          TTRanks& oranks) {
    check_same_shape(*a.shape, *b.shape, "multiply");
    bsize = broadcast_size(a.b, b.b);
    oranks = mul_ranks(*a.ranks, *b.ranks);
    const TTShape& shape = *a.shape;
    return run_pairs(bsize, shape, oranks, a, b,
                     [&shape](const TTView& x, const TTView& y, const std::vector<double*>& out) {
                         mul_kernel(x, y, out, shape);
                     });
}

// ---------------------------------------------------------------------------
// full

void full_combined(const TTView& v, std::vector<double>& out) {
    Index d = v.ndims();
    std::vector<double> p = {1.0};
    Index rows = 1;
    for (Index k = 0; k < d; ++k) {
        Index r0 = v.rank(k), r1 = v.rank(k + 1);
        Index mode = v.shape->mode_dim(k);
        CMapRM C(v.core(k), r0, mode * r1);
        CMapRM P(p.data(), rows, r0);
        std::vector<double> q(static_cast<size_t>(rows * mode * r1));
        MapRM Q(q.data(), rows, mode * r1);
        Q.noalias() = P * C;
        p = std::move(q);
        rows *= mode;
    }
    out = std::move(p);
}

void matrix_unshuffle(const TTShape& shape, const std::vector<double>& combined, double* out) {
    // combined order is (i_1 j_1)(i_2 j_2)...; rearrange to (i, j) row-major
    Index d = shape.ndims();
    Index ncols = shape.total_cols();
    std::vector<Index> rstride(static_cast<size_t>(d)), cstride(static_cast<size_t>(d));
    Index rs = 1, cs = 1;
    for (Index k = d - 1; k >= 0; --k) {
        rstride[static_cast<size_t>(k)] = rs;
        cstride[static_cast<size_t>(k)] = cs;
        rs *= shape.row_dim(k);
        cs *= shape.col_dim(k);
    }
    Index total = static_cast<Index>(combined.size());
    for (Index pos = 0; pos < total; ++pos) {
        Index rem = pos, row = 0, col = 0;
        for (Index k = d - 1; k >= 0; --k) {
            size_t ks = static_cast<size_t>(k);
            Index n = shape.col_dim(k);
            Index c = rem % shape.mode_dim(k);
            rem /= shape.mode_dim(k);
            row += rstride[ks] * (c / n);
            col += cstride[ks] * (c % n);
        }
        out[row * ncols + col] = combined[static_cast<size_t>(pos)];
    }
}

void full_object(const TTView& v, double* out) {
    std::vector<double> combined;
    full_combined(v, combined);
    if (!v.shape->is_matrix()) {
        std::memcpy(out, combined.data(), combined.size() * sizeof(double));
    } else {
        matrix_unshuffle(*v.shape, combined, out);
    }
}

// ---------------------------------------------------------------------------
// slice machinery

struct ModeSel {
    bool fixed = false;
    Index index = 0;                 // combined index when fixed
    std::vector<Index> keep;         // combined indices when kept
    Index new_row = 0, new_col = 1;  // extents of the kept mode
};

std::vector<Index> expand(const SliceSpec& s, Index dim, Index mode, const char* side) {
    std::vector<Index> ids;
    switch (s.kind) {
        case SliceSpec::Kind::All:
            for (Index i = 0; i < dim; ++i) ids.push_back(i);
            break;
        case SliceSpec::Kind::Range: {
            if (s.step < 1) throw std::invalid_argument("slice: step must be >= 1");
            if (s.start < 0 || s.stop > dim || s.start >= s.stop) {
                throw std::invalid_argument("slice: bad " + std::string(side) + " range [" +
                                            std::to_string(s.start) + ", " +
                                            std::to_string(s.stop) + ") on mode " +
                                            std::to_string(mode) + " of size " +
                                            std::to_string(dim));
            }
            for (Index i = s.start; i < s.stop; i += s.step) ids.push_back(i);
            break;
        }
        case SliceSpec::Kind::Single:
            if (s.index < 0 || s.index >= dim) {
                throw std::out_of_range("slice: " + std::string(side) + " index " +
                                        std::to_string(s.index) + " out of bounds on mode " +
                                        std::to_string(mode) + " of size " + std::to_string(dim));
            }
            ids.push_back(s.index);
            break;
    }
    return ids;
}

SliceResult slice_impl(const TensorTrain& t, const std::vector<ModeSel>& sel) {
    Index d = t.ndims();
    const TTShape& shape = t.shape();
    bool is_matrix = shape.is_matrix();

    RowMat pending;  // product of collapsed-core matrices not yet absorbed
    bool have_pending = false;
    std::vector<std::vector<double>> kept_cores;
    std::vector<Index> kept_ranks = {1};
    std::vector<Index> new_rows, new_cols;

    for (Index k = 0; k < d; ++k) {
        const ModeSel& m = sel[static_cast<size_t>(k)];
        Index r0 = t.ranks()[k], r1 = t.ranks()[k + 1];
        Index mode = shape.mode_dim(k);
        const double* C = t.core(k).data();
        if (m.fixed) {
            CStridedRM slab(C + m.index * r1, r0, r1, Eigen::OuterStride<>(mode * r1));
            if (!have_pending) {
                pending = slab;
                have_pending = true;
            } else {
                pending = (pending * slab).eval();
            }
        } else {
            Index len = static_cast<Index>(m.keep.size());
            std::vector<double> gathered(static_cast<size_t>(r0 * len * r1));
            for (Index a = 0; a < r0; ++a)
                for (Index x = 0; x < len; ++x)
                    std::memcpy(gathered.data() + (a * len + x) * r1,
                                C + (a * mode + m.keep[static_cast<size_t>(x)]) * r1,
                                static_cast<size_t>(r1) * sizeof(double));
            if (have_pending) {
                CMapRM G(gathered.data(), r0, len * r1);
                std::vector<double> applied(static_cast<size_t>(pending.rows() * len * r1));
                MapRM A(applied.data(), pending.rows(), len * r1);
                A.noalias() = pending * G;
                gathered = std::move(applied);
                r0 = pending.rows();
                have_pending = false;
            }
            kept_cores.push_back(std::move(gathered));
            kept_ranks.push_back(r1);
            new_rows.push_back(m.new_row);
            new_cols.push_back(m.new_col);
        }
    }

    if (kept_cores.empty()) {
        return SliceResult(have_pending ? pending(0, 0) : 1.0);
    }
    if (have_pending) {
        // trailing fixed modes: absorb into the last kept core from the right
        auto& last = kept_cores.back();
        Index r1 = kept_ranks.back();
        Index lead = static_cast<Index>(last.size()) / r1;
        CMapRM L(last.data(), lead, r1);
        std::vector<double> applied(static_cast<size_t>(lead * pending.cols()));
        MapRM A(applied.data(), lead, pending.cols());
        A.noalias() = L * pending;
        last = std::move(applied);
        kept_ranks.back() = pending.cols();
    }
    kept_ranks.back() = 1;  // trailing rank is 1 by construction (r_d = 1 or absorbed)

    TTShape oshape = is_matrix ? TTShape::matrix(new_rows, new_cols) : TTShape::tensor(new_rows);
    return SliceResult(TensorTrain(oshape, TTRanks(kept_ranks), std::move(kept_cores)));
}

}  // namespace

// ---------------------------------------------------------------------------
// public surface

TensorTrain from_cores(const std::vector<DenseTensor>& cores) {
    if (cores.empty()) throw std::invalid_argument("from_cores: empty core list");
    Index d = static_cast<Index>(cores.size());
    bool is_matrix = cores.front().ndims() == 4;
    std::vector<Index> rows, cols, ranks;
    ranks.push_back(1);
    for (Index k = 0; k < d; ++k) {
        const auto& c = cores[static_cast<size_t>(k)];
        if (c.ndims() != (is_matrix ? 4 : 3)) {
            throw std::invalid_argument("from_cores: core " + std::to_string(k) + " has " +
                                        std::to_string(c.ndims()) +
                                        " axes, expected " + std::to_string(is_matrix ? 4 : 3));
        }
        Index r0 = c.dims.front(), r1 = c.dims.back();
        if (r0 != ranks.back()) {
            throw std::invalid_argument("from_cores: rank chain broken at boundary " +
                                        std::to_string(k) + ": " + std::to_string(ranks.back()) +
                                        " vs " + std::to_string(r0));
        }
        ranks.push_back(r1);
        rows.push_back(c.dims[1]);
        if (is_matrix) cols.push_back(c.dims[2]);
    }
    if (ranks.back() != 1) {
        throw std::invalid_argument("from_cores: trailing rank must be 1, got " +
                                    std::to_string(ranks.back()));
    }
    TTShape shape = is_matrix ? TTShape::matrix(std::move(rows), std::move(cols))
                              : TTShape::tensor(std::move(rows));
    std::vector<std::vector<double>> buffers;
    buffers.reserve(cores.size());
    for (const auto& c : cores) buffers.push_back(c.data);
    return TensorTrain(std::move(shape), TTRanks(std::move(ranks)), std::move(buffers));
}

TensorTrain ones(const TTShape& shape) {
    std::vector<std::vector<double>> cores;
    for (Index k = 0; k < shape.ndims(); ++k) {
        cores.emplace_back(static_cast<size_t>(shape.mode_dim(k)), 1.0);
    }
    return TensorTrain(shape, TTRanks::unit(shape.ndims()), std::move(cores));
}

TensorTrain eye(const std::vector<Index>& dims) {
    TTShape shape = TTShape::matrix(dims, dims);
    std::vector<std::vector<double>> cores;
    for (Index k = 0; k < shape.ndims(); ++k) {
        Index m = shape.row_dim(k);
        std::vector<double> c(static_cast<size_t>(m * m), 0.0);
        for (Index i = 0; i < m; ++i) c[static_cast<size_t>(i * m + i)] = 1.0;
        cores.push_back(std::move(c));
    }
    return TensorTrain(std::move(shape), TTRanks::unit(static_cast<Index>(dims.size())),
                       std::move(cores));
}

namespace {

std::vector<std::vector<double>> random_cores(const TTShape& shape, const TTRanks& ranks,
                                              std::uint64_t seed, Index batch) {
    Index d = shape.ndims();
    double log_prod = 0.0;
    for (Index k = 1; k < d; ++k) log_prod += std::log(static_cast<double>(ranks[k]));
    double scale = std::exp(-log_prod / (2.0 * static_cast<double>(d)));
    auto cores = alloc_cores(batch, shape, ranks);
    parallel::for_range(batch, [&](Index lo, Index hi) {
        for (Index i = lo; i < hi; ++i) {
            std::mt19937_64 rng(splitmix64(seed + kSeedMix * static_cast<std::uint64_t>(i)));
            std::normal_distribution<double> gauss(0.0, 1.0);
            for (Index k = 0; k < d; ++k) {
                Index sz = ranks[k] * shape.mode_dim(k) * ranks[k + 1];
                double* p = cores[static_cast<size_t>(k)].data() + i * sz;
                for (Index j = 0; j < sz; ++j) p[j] = scale * gauss(rng);
            }
        }
    });
    return cores;
}

void check_ranks_for(const TTShape& shape, const TTRanks& ranks) {
    if (ranks.order() != shape.ndims()) {
        throw std::invalid_argument("random: rank tuple order does not match shape");
    }
}

}  // namespace

TensorTrain random(const TTShape& shape, const TTRanks& ranks, std::uint64_t seed) {
    check_ranks_for(shape, ranks);
    return TensorTrain(shape, ranks, random_cores(shape, ranks, seed, 1));
}

TensorTrainBatch random_batch(Index batch_size, const TTShape& shape, const TTRanks& ranks,
                              std::uint64_t seed) {
    check_ranks_for(shape, ranks);
    return TensorTrainBatch(batch_size, shape, ranks,
                            random_cores(shape, ranks, seed, batch_size));
}

DenseTensor full(const TensorTrain& t, Index guard) {
    check_guard(t.shape(), 1, guard);
    std::vector<Index> dims;
    if (t.is_matrix()) {
        dims = {t.shape().total_rows(), t.shape().total_cols()};
    } else {
        dims = t.shape().row_dims();
    }
    DenseTensor out(std::move(dims));
    full_object(view_of(t), out.data.data());
    return out;
}

DenseTensor full(const TensorTrainBatch& t, Index guard) {
    check_guard(t.shape(), t.batch_size(), guard);
    std::vector<Index> dims = {t.batch_size()};
    if (t.is_matrix()) {
        dims.push_back(t.shape().total_rows());
        dims.push_back(t.shape().total_cols());
    } else {
        for (Index dsz : t.shape().row_dims()) dims.push_back(dsz);
    }
    DenseTensor out(std::move(dims));
    Index per = out.size() / t.batch_size();
    for (Index i = 0; i < t.batch_size(); ++i) {
        full_object(view_of(t, i), out.data.data() + i * per);
    }
    return out;
}

SliceResult slice(const TensorTrain& t, const std::vector<SliceSpec>& specs) {
    if (t.is_matrix()) {
        throw std::invalid_argument("slice: matrix TT requires per-mode (row, col) spec pairs");
    }
    if (static_cast<Index>(specs.size()) != t.ndims()) {
        throw std::invalid_argument("slice: got " + std::to_string(specs.size()) +
                                    " specs for " + std::to_string(t.ndims()) + " modes");
    }
    std::vector<ModeSel> sel;
    for (Index k = 0; k < t.ndims(); ++k) {
        const auto& s = specs[static_cast<size_t>(k)];
        ModeSel m;
        auto ids = expand(s, t.shape().row_dim(k), k, "mode");
        if (s.kind == SliceSpec::Kind::Single) {
            m.fixed = true;
            m.index = ids.front();
        } else {
            m.keep = std::move(ids);
            m.new_row = static_cast<Index>(m.keep.size());
        }
        sel.push_back(std::move(m));
    }
    return slice_impl(t, sel);
}

SliceResult slice(const TensorTrain& t,
                  const std::vector<std::pair<SliceSpec, SliceSpec>>& specs) {
    if (!t.is_matrix()) {
        throw std::invalid_argument("slice: (row, col) spec pairs require a matrix TT");
    }
    if (static_cast<Index>(specs.size()) != t.ndims()) {
        throw std::invalid_argument("slice: got " + std::to_string(specs.size()) +
                                    " spec pairs for " + std::to_string(t.ndims()) + " modes");
    }
    std::vector<ModeSel> sel;
    for (Index k = 0; k < t.ndims(); ++k) {
        const auto& [rs, cs] = specs[static_cast<size_t>(k)];
        bool rfix = rs.kind == SliceSpec::Kind::Single;
        bool cfix = cs.kind == SliceSpec::Kind::Single;
        if (rfix != cfix) {
            throw std::invalid_argument(
                "slice: mode " + std::to_string(k) +
                " fixes only one of (row, col); fix both or neither");
        }
        Index n = t.shape().col_dim(k);
        auto rid = expand(rs, t.shape().row_dim(k), k, "row");
        auto cid = expand(cs, n, k, "col");
        ModeSel m;
        if (rfix) {
            m.fixed = true;
            m.index = rid.front() * n + cid.front();
        } else {
            for (Index i : rid)
                for (Index j : cid) m.keep.push_back(i * n + j);
            m.new_row = static_cast<Index>(rid.size());
            m.new_col = static_cast<Index>(cid.size());
        }
        sel.push_back(std::move(m));
    }
    return slice_impl(t, sel);
}

TensorTrain add(const TensorTrain& a, const TensorTrain& b) {
    Index bs;
    TTRanks oranks = TTRanks::unit(a.ndims());
    auto cores = add_impl(batch_arg(a), batch_arg(b), bs, oranks);
    return TensorTrain(a.shape(), oranks, std::move(cores));
}

TensorTrainBatch add(const TensorTrainBatch& a, const TensorTrainBatch& b) {
    Index bs;
    TTRanks oranks = TTRanks::unit(a.ndims());
    auto cores = add_impl(batch_arg(a), batch_arg(b), bs, oranks);
    return TensorTrainBatch(bs, a.shape(), oranks, std::move(cores));
}

TensorTrainBatch add(const TensorTrainBatch& a, const TensorTrain& b) {
    Index bs;
    TTRanks oranks = TTRanks::unit(a.ndims());
    auto cores = add_impl(batch_arg(a), batch_arg(b), bs, oranks);
    return TensorTrainBatch(bs, a.shape(), oranks, std::move(cores));
}

TensorTrainBatch add(const TensorTrain& a, const TensorTrainBatch& b) {
    Index bs;
    TTRanks oranks = TTRanks::unit(a.ndims());
    auto cores = add_impl(batch_arg(a), batch_arg(b), bs, oranks);
    return TensorTrainBatch(bs, a.shape(), oranks, std::move(cores));
}

TensorTrain multiply(const TensorTrain& a, const TensorTrain& b) {
    Index bs;
    TTRanks oranks = TTRanks::unit(a.ndims());
    auto cores = mul_impl(batch_arg(a), batch_arg(b), bs, oranks);
    return TensorTrain(a.shape(), oranks, std::move(cores));
}

TensorTrainBatch multiply(const TensorTrainBatch& a, const TensorTrainBatch& b) {
    Index bs;
    TTRanks oranks = TTRanks::unit(a.ndims());
    auto cores = mul_impl(batch_arg(a), batch_arg(b), bs, oranks);
    return TensorTrainBatch(bs, a.shape(), oranks, std::move(cores));
}

TensorTrainBatch multiply(const TensorTrainBatch& a, const TensorTrain& b) {
    Index bs;
    TTRanks oranks = TTRanks::unit(a.ndims());
    auto cores = mul_impl(batch_arg(a), batch_arg(b), bs, oranks);
    return TensorTrainBatch(bs, a.shape(), oranks, std::move(cores));
}

TensorTrainBatch multiply(const TensorTrain& a, const TensorTrainBatch& b) {
    Index bs;
    TTRanks oranks = TTRanks::unit(a.ndims());
    auto cores = mul_impl(batch_arg(a), batch_arg(b), bs, oranks);
    return TensorTrainBatch(bs, a.shape(), oranks, std::move(cores));
}

namespace {

std::vector<std::vector<double>> scaled_cores(const std::vector<std::vector<double>>& cores,
                                              double scalar, Index first_core_members,
                                              Index member_size) {
    if (!std::isfinite(scalar)) {
        throw std::invalid_argument("multiply: scalar must be finite");
    }
    auto out = cores;
    // scale the first core only, per member
    auto& c0 = out.front();
    for (Index i = 0; i < first_core_members; ++i) {
        double* p = c0.data() + i * member_size;
        for (Index j = 0; j < member_size; ++j) p[j] *= scalar;
    }
    return out;
}

}  // namespace

TensorTrain multiply(const TensorTrain& a, double scalar) {
    auto cores = scaled_cores(a.cores(), scalar, 1, a.core_size(0));
    return TensorTrain(a.shape(), a.ranks(), std::move(cores));
}

TensorTrainBatch multiply(const TensorTrainBatch& a, double scalar) {
    std::vector<std::vector<double>> cores;
    cores.reserve(static_cast<size_t>(a.ndims()));
    for (Index k = 0; k < a.ndims(); ++k) cores.push_back(a.core(k));
    cores = scaled_cores(cores, scalar, a.batch_size(), a.core_size(0));
    return TensorTrainBatch(a.batch_size(), a.shape(), a.ranks(), std::move(cores));
}

}  // namespace tt
