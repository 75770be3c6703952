#include "tt/decomp.hpp"

#include <cmath>
#include <stdexcept>

#include "internal.hpp"
#include "tt/parallel.hpp"

namespace tt {

using namespace internal;

namespace {

void check_spec(const TruncationSpec& spec) {
    if (spec.max_rank < 0) throw std::invalid_argument("TruncationSpec: negative max_rank");
    if (spec.epsilon < 0.0 || spec.epsilon >= 1.0) {
        throw std::invalid_argument("TruncationSpec: epsilon must lie in [0, 1)");
    }
}

/// Smallest rank whose singular-value tail stays below `threshold`, capped by
/// max_rank (0 = unbounded). Always keeps at least one direction.
Index choose_rank(const Eigen::VectorXd& sigma, double threshold, Index max_rank) {
    Index full = sigma.size();
    Index r = full;
    // numerical-noise floor: directions this far below the leading singular
    // value carry no content even under an exact spec
    double floor = sigma.size() > 0 ? sigma[0] * 1e-14 : 0.0;
    while (r > 1 && sigma[r - 1] <= floor) --r;
    if (threshold > 0.0) {
        double tail = 0.0;
        while (r > 1) {
            double next = tail + sigma[r - 1] * sigma[r - 1];
            if (std::sqrt(next) > threshold) break;
            tail = next;
            --r;
        }
    }
    if (max_rank > 0) r = std::min(r, max_rank);
    return std::max<Index>(r, 1);
}

struct MutableTT {
    TTShape shape;
    std::vector<Index> ranks;
    std::vector<std::vector<double>> cores;

    Index d() const { return shape.ndims(); }
    Index mode(Index k) const { return shape.mode_dim(k); }
};

MutableTT make_mutable(const TensorTrain& t) {
    return {t.shape(), t.ranks().values(), t.cores()};
}

MutableTT make_mutable(const TensorTrainBatch& t, Index i) {
    std::vector<std::vector<double>> cores;
    for (Index k = 0; k < t.ndims(); ++k) {
        auto s = t.core_span(k, i);
        cores.emplace_back(s.begin(), s.end());
    }
    return {t.shape(), t.ranks().values(), std::move(cores)};
}

TensorTrain freeze(MutableTT&& m) {
    return TensorTrain(std::move(m.shape), TTRanks(std::move(m.ranks)), std::move(m.cores));
}

void left_sweep(MutableTT& t) {
    Index d = t.d();
    for (Index k = 0; k + 1 < d; ++k) {
        Index r0 = t.ranks[static_cast<size_t>(k)];
        Index r1 = t.ranks[static_cast<size_t>(k + 1)];
        Index r2 = t.ranks[static_cast<size_t>(k + 2)];
        Index mode = t.mode(k);
        Index rows = r0 * mode;
        Index rnew = std::min(rows, r1);
        CMapRM M(t.cores[static_cast<size_t>(k)].data(), rows, r1);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
        Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(rows, rnew);
        Eigen::MatrixXd R =
            qr.matrixQR().topRows(rnew).triangularView<Eigen::Upper>();
        std::vector<double> qbuf(static_cast<size_t>(rows * rnew));
        MapRM(qbuf.data(), rows, rnew) = Q;
        t.cores[static_cast<size_t>(k)] = std::move(qbuf);
        // absorb R into the right neighbor
        Index nmode = t.mode(k + 1);
        CMapRM next(t.cores[static_cast<size_t>(k + 1)].data(), r1, nmode * r2);
        std::vector<double> nbuf(static_cast<size_t>(rnew * nmode * r2));
        MapRM(nbuf.data(), rnew, nmode * r2).noalias() = R * next;
        t.cores[static_cast<size_t>(k + 1)] = std::move(nbuf);
        t.ranks[static_cast<size_t>(k + 1)] = rnew;
    }
}

void right_sweep(MutableTT& t) {
    Index d = t.d();
    for (Index k = d - 1; k > 0; --k) {
        Index r0 = t.ranks[static_cast<size_t>(k)];
        Index r1 = t.ranks[static_cast<size_t>(k + 1)];
        Index mode = t.mode(k);
        Index cols = mode * r1;
        Index rnew = std::min(r0, cols);
        CMapRM M(t.cores[static_cast<size_t>(k)].data(), r0, cols);
        Eigen::MatrixXd Mt = M.transpose();
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(Mt);
        Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(cols, rnew);
        Eigen::MatrixXd L =
            (qr.matrixQR().topRows(rnew).triangularView<Eigen::Upper>()).transpose();
        std::vector<double> qbuf(static_cast<size_t>(rnew * cols));
        MapRM(qbuf.data(), rnew, cols) = Q.transpose();
        t.cores[static_cast<size_t>(k)] = std::move(qbuf);
        // absorb L = R^T into the left neighbor
        Index pr = t.ranks[static_cast<size_t>(k - 1)];
        Index pmode = t.mode(k - 1);
        CMapRM prev(t.cores[static_cast<size_t>(k - 1)].data(), pr * pmode, r0);
        std::vector<double> pbuf(static_cast<size_t>(pr * pmode * rnew));
        MapRM(pbuf.data(), pr * pmode, rnew).noalias() = prev * L;
        t.cores[static_cast<size_t>(k - 1)] = std::move(pbuf);
        t.ranks[static_cast<size_t>(k)] = rnew;
    }
}

void truncate_sweep(MutableTT& t, const TruncationSpec& spec, double fro_norm) {
    Index d = t.d();
    if (d == 1) return;
    double step_tol =
        spec.epsilon > 0.0 ? spec.epsilon * fro_norm / std::sqrt(static_cast<double>(d - 1)) : 0.0;
    for (Index k = 0; k + 1 < d; ++k) {
        Index r0 = t.ranks[static_cast<size_t>(k)];
        Index r1 = t.ranks[static_cast<size_t>(k + 1)];
        Index r2 = t.ranks[static_cast<size_t>(k + 2)];
        Index mode = t.mode(k);
        Index rows = r0 * mode;
        CMapRM M(t.cores[static_cast<size_t>(k)].data(), rows, r1);
        Eigen::BDCSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
        Index r = choose_rank(svd.singularValues(), step_tol, spec.max_rank);
        std::vector<double> ubuf(static_cast<size_t>(rows * r));
        MapRM(ubuf.data(), rows, r) = svd.matrixU().leftCols(r);
        t.cores[static_cast<size_t>(k)] = std::move(ubuf);
        Eigen::MatrixXd carry = svd.singularValues().head(r).asDiagonal() *
                                svd.matrixV().leftCols(r).transpose();  // (r, r1)
        Index nmode = t.mode(k + 1);
        CMapRM next(t.cores[static_cast<size_t>(k + 1)].data(), r1, nmode * r2);
        std::vector<double> nbuf(static_cast<size_t>(r * nmode * r2));
        MapRM(nbuf.data(), r, nmode * r2).noalias() = carry * next;
        t.cores[static_cast<size_t>(k + 1)] = std::move(nbuf);
        t.ranks[static_cast<size_t>(k + 1)] = r;
    }
}

double first_core_norm(const MutableTT& t) {
    CMapRM c0(t.cores.front().data(), 1, static_cast<Index>(t.cores.front().size()));
    return c0.norm();
}

TensorTrain round_single(MutableTT&& m, const TruncationSpec& spec) {
    right_sweep(m);
    double nrm = first_core_norm(m);
    truncate_sweep(m, spec, nrm);
    return freeze(std::move(m));
}

/// Zero-pad per-object results to shared per-core max ranks and pack them
/// with the batch axis outermost. Padding leaves reconstructions unchanged.
TensorTrainBatch pack_padded(const std::vector<TensorTrain>& objs, const TTShape& shape) {
    Index b = static_cast<Index>(objs.size());
    Index d = shape.ndims();
    std::vector<Index> target(static_cast<size_t>(d) + 1, 1);
    for (const auto& o : objs) {
        for (Index k = 0; k <= d; ++k) {
            target[static_cast<size_t>(k)] = std::max(target[static_cast<size_t>(k)], o.ranks()[k]);
        }
    }
    TTRanks oranks{target};
    auto cores = alloc_cores(b, shape, oranks);
    for (Index i = 0; i < b; ++i) {
        const TensorTrain& o = objs[static_cast<size_t>(i)];
        for (Index k = 0; k < d; ++k) {
            Index r0 = o.ranks()[k], r1 = o.ranks()[k + 1];
            Index R0 = oranks[k], R1 = oranks[k + 1];
            Index mode = shape.mode_dim(k);
            const double* src = o.core(k).data();
            double* dst = cores[static_cast<size_t>(k)].data() + i * R0 * mode * R1;
            for (Index a = 0; a < r0; ++a)
                for (Index x = 0; x < mode; ++x)
                    for (Index c = 0; c < r1; ++c)
                        dst[(a * mode + x) * R1 + c] = src[(a * mode + x) * r1 + c];
        }
    }
    return TensorTrainBatch(b, shape, oranks, std::move(cores));
}

}  // namespace

TensorTrain orthogonalize(const TensorTrain& t, Direction dir) {
    MutableTT m = make_mutable(t);
    if (dir == Direction::Left) {
        left_sweep(m);
    } else {
        right_sweep(m);
    }
    return freeze(std::move(m));
}

TensorTrainBatch orthogonalize(const TensorTrainBatch& t, Direction dir) {
    std::vector<TensorTrain> results(
        static_cast<size_t>(t.batch_size()),
        TensorTrain(TTShape::tensor({1}), TTRanks::unit(1), {{0.0}}));
    parallel::for_range(t.batch_size(), [&](Index lo, Index hi) {
        for (Index i = lo; i < hi; ++i) {
            MutableTT m = make_mutable(t, i);
            if (dir == Direction::Left) {
                left_sweep(m);
            } else {
                right_sweep(m);
            }
            results[static_cast<size_t>(i)] = freeze(std::move(m));
        }
    });
    return pack_padded(results, t.shape());
}

TensorTrain round(const TensorTrain& t, TruncationSpec spec) {
    check_spec(spec);
    return round_single(make_mutable(t), spec);
}

TensorTrainBatch round(const TensorTrainBatch& t, TruncationSpec spec) {
    check_spec(spec);
    std::vector<TensorTrain> results(static_cast<size_t>(t.batch_size()),
                                     TensorTrain(TTShape::tensor({1}), TTRanks::unit(1),
                                                 {{0.0}}));
    parallel::for_range(t.batch_size(), [&](Index lo, Index hi) {
        for (Index i = lo; i < hi; ++i) {
            results[static_cast<size_t>(i)] = round_single(make_mutable(t, i), spec);
        }
    });
    return pack_padded(results, t.shape());
}

TensorTrain to_tt_tensor(const DenseTensor& dense, TruncationSpec spec) {
    check_spec(spec);
    Index d = dense.ndims();
    if (d < 1) throw std::invalid_argument("to_tt_tensor: need at least one mode");
    for (double v : dense.data) {
        if (!std::isfinite(v)) throw std::invalid_argument("to_tt_tensor: non-finite input entry");
    }
    double nrm = CMapRM(dense.data.data(), 1, dense.size()).norm();
    double step_tol =
        d > 1 && spec.epsilon > 0.0 ? spec.epsilon * nrm / std::sqrt(static_cast<double>(d - 1))
                                    : 0.0;

    std::vector<std::vector<double>> cores;
    std::vector<Index> ranks = {1};
    std::vector<double> rest = dense.data;
    Index lead = 1;  // r_{k-1}
    for (Index k = 0; k + 1 < d; ++k) {
        Index mode = dense.dims[static_cast<size_t>(k)];
        Index rows = lead * mode;
        Index cols = static_cast<Index>(rest.size()) / rows;
        CMapRM M(rest.data(), rows, cols);
        Eigen::BDCSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
        Index r = choose_rank(svd.singularValues(), step_tol, spec.max_rank);
        std::vector<double> ubuf(static_cast<size_t>(rows * r));
        MapRM(ubuf.data(), rows, r) = svd.matrixU().leftCols(r);
        cores.push_back(std::move(ubuf));
        ranks.push_back(r);
        Eigen::MatrixXd carry = svd.singularValues().head(r).asDiagonal() *
                                svd.matrixV().leftCols(r).transpose();
        std::vector<double> nrest(static_cast<size_t>(r * cols));
        MapRM(nrest.data(), r, cols) = carry;
        rest = std::move(nrest);
        lead = r;
    }
    cores.push_back(std::move(rest));
    ranks.push_back(1);
    return TensorTrain(TTShape::tensor(dense.dims), TTRanks(std::move(ranks)), std::move(cores));
}

TensorTrain to_tt_matrix(const Eigen::MatrixXd& dense,
                         const std::vector<std::pair<Index, Index>>& mode_shape,
                         TruncationSpec spec) {
    check_spec(spec);
    Index d = static_cast<Index>(mode_shape.size());
    if (d < 1) throw std::invalid_argument("to_tt_matrix: need at least one mode pair");
    std::vector<Index> rows, cols, modes;
    Index mprod = 1, nprod = 1;
    for (const auto& [m, n] : mode_shape) {
        if (m < 1 || n < 1) throw std::invalid_argument("to_tt_matrix: nonpositive mode size");
        rows.push_back(m);
        cols.push_back(n);
        modes.push_back(m * n);
        mprod *= m;
        nprod *= n;
    }
    if (dense.rows() != mprod || dense.cols() != nprod) {
        throw std::invalid_argument("to_tt_matrix: matrix is " + std::to_string(dense.rows()) +
                                    "x" + std::to_string(dense.cols()) +
                                    " but mode shape products are " + std::to_string(mprod) + "x" +
                                    std::to_string(nprod));
    }

    // shuffle E[i, j] into the d-way tensor indexed by combined (i_k j_k)
    DenseTensor shuffled(modes);
    std::vector<Index> mstride(static_cast<size_t>(d)), nstride(static_cast<size_t>(d)),
        cstride(static_cast<size_t>(d));
    Index ms = 1, ns = 1, css = 1;
    for (Index k = d - 1; k >= 0; --k) {
        mstride[static_cast<size_t>(k)] = ms;
        nstride[static_cast<size_t>(k)] = ns;
        cstride[static_cast<size_t>(k)] = css;
        ms *= rows[static_cast<size_t>(k)];
        ns *= cols[static_cast<size_t>(k)];
        css *= modes[static_cast<size_t>(k)];
    }
    for (Index i = 0; i < mprod; ++i) {
        for (Index j = 0; j < nprod; ++j) {
            Index pos = 0, ri = i, rj = j;
            for (Index k = 0; k < d; ++k) {
                size_t ks = static_cast<size_t>(k);
                Index ik = ri / mstride[ks];
                ri %= mstride[ks];
                Index jk = rj / nstride[ks];
                rj %= nstride[ks];
                pos += (ik * cols[ks] + jk) * cstride[ks];
            }
            shuffled.data[static_cast<size_t>(pos)] = dense(i, j);
        }
    }

    TensorTrain t = to_tt_tensor(shuffled, spec);
    // rewrap the combined-mode cores as matrix cores (identical layout)
    std::vector<std::vector<double>> bufs = t.cores();
    return TensorTrain(TTShape::matrix(std::move(rows), std::move(cols)), t.ranks(),
                       std::move(bufs));
}

}  // namespace tt
