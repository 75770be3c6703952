#include "tt/riemannian.hpp"

#include <cmath>
#include <stdexcept>

#include "internal.hpp"
#include "tt/decomp.hpp"
#include "tt/flops.hpp"
#include "tt/parallel.hpp"

namespace tt {

using namespace internal;

namespace {

inline void gemm_count(Index m, Index n, Index k) {
    flops::add(static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(n) *
               static_cast<std::uint64_t>(k));
}

constexpr double kRankDeficiencyTol = 1e-12;

struct Base {
    TTShape shape;
    TTRanks ranks;
    std::vector<std::vector<double>> left;   // left-orthogonal cores of B
    std::vector<std::vector<double>> right;  // right-orthogonal cores of B
};

/// Left-orthogonalize the base, then right-orthogonalize that form to obtain
/// V cores, checking for structural and numerical rank deficiency on the way.
Base prepare_base(const TensorTrain& where, const char* op) {
    if (where.is_matrix()) {
        throw std::invalid_argument(std::string(op) + ": base must be a tensor TT");
    }
    TensorTrain u = orthogonalize(where, Direction::Left);
    if (!(u.ranks() == where.ranks())) {
        throw std::invalid_argument(std::string(op) +
                                    ": base is rank-deficient (declared ranks not achievable)");
    }

    Index d = u.ndims();
    const TTShape& shape = u.shape();
    std::vector<Index> ranks = u.ranks().values();
    std::vector<std::vector<double>> right = u.cores();
    for (Index k = d - 1; k > 0; --k) {
        Index r0 = ranks[static_cast<size_t>(k)];
        Index r1 = ranks[static_cast<size_t>(k + 1)];
        Index cols = shape.mode_dim(k) * r1;
        if (cols < r0) {
            throw std::invalid_argument(std::string(op) +
                                        ": base is rank-deficient at core " + std::to_string(k));
        }
        CMapRM M(right[static_cast<size_t>(k)].data(), r0, cols);
        Eigen::MatrixXd Mt = M.transpose();
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(Mt);
        Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(cols, r0);
        Eigen::MatrixXd R = qr.matrixQR().topRows(r0).triangularView<Eigen::Upper>();
        double dmax = R.diagonal().cwiseAbs().maxCoeff();
        double dmin = R.diagonal().cwiseAbs().minCoeff();
        if (dmax == 0.0 || dmin < kRankDeficiencyTol * dmax) {
            throw std::invalid_argument(std::string(op) +
                                        ": base is numerically rank-deficient at core " +
                                        std::to_string(k));
        }
        MapRM(right[static_cast<size_t>(k)].data(), r0, cols) = Q.transpose();
        Index pr = ranks[static_cast<size_t>(k - 1)];
        Index pmode = shape.mode_dim(k - 1);
        CMapRM prev(right[static_cast<size_t>(k - 1)].data(), pr * pmode, r0);
        std::vector<double> pbuf(static_cast<size_t>(pr * pmode * r0));
        MapRM(pbuf.data(), pr * pmode, r0).noalias() = prev * R.transpose();
        right[static_cast<size_t>(k - 1)] = std::move(pbuf);
    }
    return {shape, u.ranks(), u.cores(), std::move(right)};
}

std::vector<std::vector<double>> zero_deltas(const Base& base) {
    Index d = base.shape.ndims();
    std::vector<std::vector<double>> ds;
    ds.reserve(static_cast<size_t>(d));
    for (Index k = 0; k < d; ++k) {
        ds.emplace_back(
            static_cast<size_t>(base.ranks[k] * base.shape.mode_dim(k) * base.ranks[k + 1]), 0.0);
    }
    return ds;
}

/// Remove the component along U_k from every delta except the last.
void gauge_project(std::vector<std::vector<double>>& deltas, const Base& base) {
    Index d = base.shape.ndims();
    for (Index k = 0; k + 1 < d; ++k) {
        Index rows = base.ranks[k] * base.shape.mode_dim(k);
        Index r1 = base.ranks[k + 1];
        CMapRM U(base.left[static_cast<size_t>(k)].data(), rows, r1);
        MapRM D(deltas[static_cast<size_t>(k)].data(), rows, r1);
        RowMat coeff(r1, r1);
        coeff.noalias() = U.transpose() * D;
        gemm_count(r1, r1, rows);
        D.noalias() -= U * coeff;
        gemm_count(rows, r1, r1);
    }
}

void check_tensor_shapes(const TTShape& what, const TTShape& base, const char* op) {
    if (what.is_matrix()) {
        throw std::invalid_argument(std::string(op) + ": projected object must be a tensor TT");
    }
    check_same_shape(what, base, op);
}

/// Accumulate weight * P_B(what) into `deltas` (without the gauge step,
/// which is linear and applied once by the caller).
void project_into(const TTView& what, const Base& base, double weight,
                  std::vector<std::vector<double>>& deltas) {
    Index d = base.shape.ndims();
    // right environments renv[k]: (rA_{k-1} x rB_{k-1})
    std::vector<RowMat> renv(static_cast<size_t>(d) + 1);
    renv[static_cast<size_t>(d)] = RowMat::Ones(1, 1);
    for (Index k = d - 1; k > 0; --k) {
        Index n = base.shape.mode_dim(k);
        Index ra0 = what.rank(k), ra1 = what.rank(k + 1);
        Index rb0 = base.ranks[k], rb1 = base.ranks[k + 1];
        CMapRM A(what.core(k), ra0 * n, ra1);
        RowMat T(ra0 * n, rb1);
        T.noalias() = A * renv[static_cast<size_t>(k + 1)];
        gemm_count(ra0 * n, rb1, ra1);
        CMapRM T3(T.data(), ra0, n * rb1);
        CMapRM V(base.right[static_cast<size_t>(k)].data(), rb0, n * rb1);
        renv[static_cast<size_t>(k)].noalias() = T3 * V.transpose();
        gemm_count(ra0, rb0, n * rb1);
    }
    // left sweep, assembling deltas on the way
    RowMat lenv = RowMat::Ones(1, 1);  // (rB_k x rA_k)
    for (Index k = 0; k < d; ++k) {
        Index n = base.shape.mode_dim(k);
        Index ra0 = what.rank(k), ra1 = what.rank(k + 1);
        Index rb0 = base.ranks[k], rb1 = base.ranks[k + 1];
        CMapRM A(what.core(k), ra0, n * ra1);
        RowMat T(rb0, n * ra1);
        T.noalias() = lenv * A;
        gemm_count(rb0, n * ra1, ra0);
        CMapRM T2(T.data(), rb0 * n, ra1);
        MapRM D(deltas[static_cast<size_t>(k)].data(), rb0 * n, rb1);
        D.noalias() += weight * (T2 * renv[static_cast<size_t>(k + 1)]);
        gemm_count(rb0 * n, rb1, ra1);
        if (k + 1 < d) {
            CMapRM U(base.left[static_cast<size_t>(k)].data(), rb0 * n, rb1);
            lenv.noalias() = U.transpose() * T2;
            gemm_count(rb1, ra1, rb0 * n);
        }
    }
}

TangentVector project_impl(const BatchArg& what, const TensorTrain& where, bool batch_result) {
    check_tensor_shapes(*what.shape, where.shape(), "project");
    Base base = prepare_base(where, "project");
    Index b = what.b;
    std::vector<std::vector<std::vector<double>>> all(static_cast<size_t>(b));
    parallel::for_range(b, [&](Index lo, Index hi) {
        for (Index i = lo; i < hi; ++i) {
            auto ds = zero_deltas(base);
            project_into(what.at(i), base, 1.0, ds);
            gauge_project(ds, base);
            all[static_cast<size_t>(i)] = std::move(ds);
        }
    });
    return TangentVector(base.shape, base.ranks, std::move(base.left), std::move(base.right),
                         std::move(all), batch_result);
}

}  // namespace

// ---------------------------------------------------------------------------
// TangentVector

TangentVector::TangentVector(TTShape shape, TTRanks base_ranks,
                             std::vector<std::vector<double>> base_left,
                             std::vector<std::vector<double>> base_right,
                             std::vector<std::vector<std::vector<double>>> deltas, bool is_batch)
    : shape_(std::move(shape)),
      ranks_(std::move(base_ranks)),
      base_left_(std::move(base_left)),
      base_right_(std::move(base_right)),
      deltas_(std::move(deltas)),
      is_batch_(is_batch) {
    Index d = shape_.ndims();
    if (static_cast<Index>(base_left_.size()) != d ||
        static_cast<Index>(base_right_.size()) != d) {
        throw std::invalid_argument("TangentVector: base core count does not match shape");
    }
    if (deltas_.empty()) throw std::invalid_argument("TangentVector: no delta sets");
    if (!is_batch_ && deltas_.size() != 1) {
        throw std::invalid_argument("TangentVector: single vector with multiple delta sets");
    }
    for (const auto& ds : deltas_) {
        if (static_cast<Index>(ds.size()) != d) {
            throw std::invalid_argument("TangentVector: delta core count does not match shape");
        }
        for (Index k = 0; k < d; ++k) {
            Index want = ranks_[k] * shape_.mode_dim(k) * ranks_[k + 1];
            if (static_cast<Index>(ds[static_cast<size_t>(k)].size()) != want) {
                throw std::invalid_argument("TangentVector: delta core " + std::to_string(k) +
                                            " has wrong extents");
            }
        }
    }
}

bool TangentVector::shares_base_with(const TangentVector& other, double tol) const {
    if (!(shape_ == other.shape_) || !(ranks_ == other.ranks_)) return false;
    auto close = [tol](const std::vector<std::vector<double>>& a,
                       const std::vector<std::vector<double>>& b) {
        for (size_t k = 0; k < a.size(); ++k) {
            for (size_t j = 0; j < a[k].size(); ++j) {
                if (std::abs(a[k][j] - b[k][j]) > tol) return false;
            }
        }
        return true;
    };
    return close(base_left_, other.base_left_) && close(base_right_, other.base_right_);
}

// ---------------------------------------------------------------------------
// projections

TangentVector project(const TensorTrain& what, const TensorTrain& where) {
    return project_impl(batch_arg(what), where, false);
}

TangentVector project(const TensorTrainBatch& what, const TensorTrain& where) {
    return project_impl(batch_arg(what), where, true);
}

TangentVector project_sum(const TensorTrainBatch& what, const TensorTrain& where,
                          const Eigen::VectorXd& weights) {
    check_tensor_shapes(what.shape(), where.shape(), "project_sum");
    Index b = what.batch_size();
    if (weights.size() != 0 && weights.size() != b) {
        throw std::invalid_argument("project_sum: got " + std::to_string(weights.size()) +
                                    " weights for a batch of " + std::to_string(b));
    }
    Base base = prepare_base(where, "project_sum");
    std::vector<std::vector<std::vector<double>>> partial(static_cast<size_t>(b));
    parallel::for_range(b, [&](Index lo, Index hi) {
        for (Index i = lo; i < hi; ++i) {
            auto ds = zero_deltas(base);
            double w = weights.size() == 0 ? 1.0 : weights[i];
            project_into(view_of(what, i), base, w, ds);
            partial[static_cast<size_t>(i)] = std::move(ds);
        }
    });
    // deterministic reduction in batch order
    auto sum = zero_deltas(base);
    for (Index i = 0; i < b; ++i) {
        for (size_t k = 0; k < sum.size(); ++k) {
            const auto& src = partial[static_cast<size_t>(i)][k];
            auto& dst = sum[k];
            for (size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
        }
    }
    gauge_project(sum, base);
    return TangentVector(base.shape, base.ranks, std::move(base.left), std::move(base.right),
                         {std::move(sum)}, false);
}

// ---------------------------------------------------------------------------
// fused projected matvec

namespace {

void check_project_matmul(const TensorTrain& a, const TTShape& cshape, const TensorTrain& base) {
    if (!a.is_matrix()) throw std::invalid_argument("project_matmul: first operand must be a TT-matrix");
    if (cshape.is_matrix()) {
        throw std::invalid_argument("project_matmul: vector operand must be a tensor TT");
    }
    if (base.is_matrix()) {
        throw std::invalid_argument("project_matmul: base must be a tensor TT");
    }
    if (a.ndims() != cshape.ndims() || a.ndims() != base.ndims()) {
        throw std::invalid_argument("project_matmul: operand mode counts differ");
    }
    for (Index k = 0; k < a.ndims(); ++k) {
        if (a.shape().col_dim(k) != cshape.row_dim(k)) {
            throw std::invalid_argument("project_matmul: mode " + std::to_string(k) +
                                        " contraction mismatch: matrix has " +
                                        std::to_string(a.shape().col_dim(k)) + " columns, vector " +
                                        std::to_string(cshape.row_dim(k)));
        }
        if (a.shape().row_dim(k) != base.shape().row_dim(k)) {
            throw std::invalid_argument("project_matmul: mode " + std::to_string(k) +
                                        " result mismatch: matrix has " +
                                        std::to_string(a.shape().row_dim(k)) + " rows, base " +
                                        std::to_string(base.shape().row_dim(k)));
        }
    }
}

TangentVector project_matmul_impl(const TensorTrain& a, const BatchArg& c,
                                  const TensorTrain& baseTT, bool batch_result) {
    check_project_matmul(a, *c.shape, baseTT);
    Base base = prepare_base(baseTT, "project_matmul");
    Index d = base.shape.ndims();

    // permuted matrix cores: (a', j) x (i, a")
    std::vector<std::vector<double>> aperm(static_cast<size_t>(d));
    for (Index k = 0; k < d; ++k) {
        Index rm0 = a.ranks()[k], rm1 = a.ranks()[k + 1];
        Index m = a.shape().row_dim(k), n = a.shape().col_dim(k);
        const double* A = a.core(k).data();
        auto& P = aperm[static_cast<size_t>(k)];
        P.resize(static_cast<size_t>(rm0 * n * m * rm1));
        for (Index a0 = 0; a0 < rm0; ++a0)
            for (Index i = 0; i < m; ++i)
                for (Index j = 0; j < n; ++j)
                    for (Index a1 = 0; a1 < rm1; ++a1)
                        P[static_cast<size_t>(((a0 * n + j) * m + i) * rm1 + a1)] =
                            A[((a0 * m + i) * n + j) * rm1 + a1];
    }

    Index b = c.b;
    std::vector<std::vector<std::vector<double>>> all(static_cast<size_t>(b));
    parallel::for_range(b, [&](Index lo, Index hi) {
        for (Index e = lo; e < hi; ++e) {
            TTView cv = c.at(e);
            // right environments: R[k] rows (a, alpha), cols beta
            std::vector<RowMat> renv(static_cast<size_t>(d) + 1);
            renv[static_cast<size_t>(d)] = RowMat::Ones(1, 1);
            for (Index k = d - 1; k > 0; --k) {
                Index rm0 = a.ranks()[k], rm1 = a.ranks()[k + 1];
                Index rc0 = cv.rank(k), rc1 = cv.rank(k + 1);
                Index rb0 = base.ranks[k], rb1 = base.ranks[k + 1];
                Index m = a.shape().row_dim(k), n = a.shape().col_dim(k);
                CMapRM A3(a.core(k).data(), rm0 * m * n, rm1);
                CMapRM Rv(renv[static_cast<size_t>(k + 1)].data(), rm1, rc1 * rb1);
                RowMat s1(rm0 * m * n, rc1 * rb1);
                s1.noalias() = A3 * Rv;
                gemm_count(rm0 * m * n, rc1 * rb1, rm1);
                CMapRM cr(cv.core(k), rc0, n * rc1);
                RowMat s2(rm0 * m, rc0 * rb1);  // rows (a, i), cols (alpha, beta)
                for (Index a0 = 0; a0 < rm0; ++a0)
                    for (Index i = 0; i < m; ++i) {
                        CMapRM blk(s1.data() + ((a0 * m + i) * n) * rc1 * rb1, n * rc1, rb1);
                        MapRM dst(s2.data() + (a0 * m + i) * rc0 * rb1, rc0, rb1);
                        dst.noalias() = cr * blk;
                        gemm_count(rc0, rb1, n * rc1);
                    }
                // permute (a, i, alpha, beta) -> rows (a, alpha), cols (i, beta)
                RowMat s4(rm0 * rc0, m * rb1);
                for (Index a0 = 0; a0 < rm0; ++a0)
                    for (Index i = 0; i < m; ++i)
                        for (Index al = 0; al < rc0; ++al)
                            for (Index be = 0; be < rb1; ++be)
                                s4(a0 * rc0 + al, i * rb1 + be) =
                                    s2(a0 * m + i, al * rb1 + be);
                CMapRM V(base.right[static_cast<size_t>(k)].data(), rb0, m * rb1);
                renv[static_cast<size_t>(k)].noalias() = s4 * V.transpose();
                gemm_count(rm0 * rc0, rb0, m * rb1);
            }

            auto ds = zero_deltas(base);
            RowMat lenv = RowMat::Ones(1, 1);  // rows beta, cols (a, alpha)
            for (Index k = 0; k < d; ++k) {
                Index rm0 = a.ranks()[k], rm1 = a.ranks()[k + 1];
                Index rc0 = cv.rank(k), rc1 = cv.rank(k + 1);
                Index rb0 = base.ranks[k], rb1 = base.ranks[k + 1];
                Index m = a.shape().row_dim(k), n = a.shape().col_dim(k);
                CMapRM Lv(lenv.data(), rb0 * rm0, rc0);
                CMapRM cr(cv.core(k), rc0, n * rc1);
                RowMat t1(rb0 * rm0, n * rc1);  // (beta, a, j, alpha')
                t1.noalias() = Lv * cr;
                gemm_count(rb0 * rm0, n * rc1, rc0);
                RowMat t2(rb0 * rc1, rm0 * n);  // rows (beta, alpha'), cols (a, j)
                for (Index be = 0; be < rb0; ++be)
                    for (Index a0 = 0; a0 < rm0; ++a0)
                        for (Index j = 0; j < n; ++j)
                            for (Index al = 0; al < rc1; ++al)
                                t2(be * rc1 + al, a0 * n + j) =
                                    t1(be * rm0 + a0, j * rc1 + al);
                CMapRM Ap(aperm[static_cast<size_t>(k)].data(), rm0 * n, m * rm1);
                RowMat t3(rb0 * rc1, m * rm1);  // (beta, alpha', i, a')
                t3.noalias() = t2 * Ap;
                gemm_count(rb0 * rc1, m * rm1, rm0 * n);
                RowMat t4(rb0 * m, rm1 * rc1);  // rows (beta, i), cols (a', alpha')
                for (Index be = 0; be < rb0; ++be)
                    for (Index al = 0; al < rc1; ++al)
                        for (Index i = 0; i < m; ++i)
                            for (Index a1 = 0; a1 < rm1; ++a1)
                                t4(be * m + i, a1 * rc1 + al) =
                                    t3(be * rc1 + al, i * rm1 + a1);
                MapRM D(ds[static_cast<size_t>(k)].data(), rb0 * m, rb1);
                D.noalias() = t4 * renv[static_cast<size_t>(k + 1)];
                gemm_count(rb0 * m, rb1, rm1 * rc1);
                if (k + 1 < d) {
                    CMapRM U(base.left[static_cast<size_t>(k)].data(), rb0 * m, rb1);
                    lenv.noalias() = U.transpose() * t4;
                    gemm_count(rb1, rm1 * rc1, rb0 * m);
                }
            }
            gauge_project(ds, base);
            all[static_cast<size_t>(e)] = std::move(ds);
        }
    });
    return TangentVector(base.shape, base.ranks, std::move(base.left), std::move(base.right),
                         std::move(all), batch_result);
}

}  // namespace

TangentVector project_matmul(const TensorTrain& a, const TensorTrainBatch& c,
                             const TensorTrain& base) {
    return project_matmul_impl(a, batch_arg(c), base, true);
}

TangentVector project_matmul(const TensorTrain& a, const TensorTrain& c,
                             const TensorTrain& base) {
    return project_matmul_impl(a, batch_arg(c), base, false);
}

// ---------------------------------------------------------------------------
// conversions and Gram

namespace {

std::vector<std::vector<double>> tangent_cores(const TangentVector& v, Index i) {
    Index d = v.ndims();
    const TTShape& shape = v.shape();
    const TTRanks& r = v.base_ranks();
    if (d == 1) {
        return {v.delta(i, 0)};
    }
    std::vector<std::vector<double>> cores;
    for (Index k = 0; k < d; ++k) {
        Index n = shape.mode_dim(k);
        Index r0 = r[k], r1 = r[k + 1];
        Index R0 = (k == 0) ? 1 : 2 * r0;
        Index R1 = (k == d - 1) ? 1 : 2 * r1;
        std::vector<double> c(static_cast<size_t>(R0 * n * R1), 0.0);
        const double* D = v.delta(i, k).data();
        const double* U = v.base_left()[static_cast<size_t>(k)].data();
        const double* V = v.base_right()[static_cast<size_t>(k)].data();
        if (k == 0) {
            // [delta_1, U_1]
            for (Index x = 0; x < n; ++x) {
                for (Index b2 = 0; b2 < r1; ++b2) {
                    c[static_cast<size_t>(x * R1 + b2)] = D[x * r1 + b2];
                    c[static_cast<size_t>(x * R1 + r1 + b2)] = U[x * r1 + b2];
                }
            }
        } else if (k == d - 1) {
            // [V_d; delta_d]
            for (Index a = 0; a < r0; ++a)
                for (Index x = 0; x < n; ++x) {
                    c[static_cast<size_t>((a * n + x))] = V[(a * n + x)];
                    c[static_cast<size_t>(((r0 + a) * n + x))] = D[(a * n + x)];
                }
        } else {
            // [[V, 0], [delta, U]]
            for (Index a = 0; a < r0; ++a)
                for (Index x = 0; x < n; ++x)
                    for (Index b2 = 0; b2 < r1; ++b2) {
                        double vv = V[(a * n + x) * r1 + b2];
                        double dd = D[(a * n + x) * r1 + b2];
                        double uu = U[(a * n + x) * r1 + b2];
                        c[static_cast<size_t>((a * n + x) * R1 + b2)] = vv;
                        c[static_cast<size_t>(((r0 + a) * n + x) * R1 + b2)] = dd;
                        c[static_cast<size_t>(((r0 + a) * n + x) * R1 + r1 + b2)] = uu;
                    }
        }
        cores.push_back(std::move(c));
    }
    return cores;
}

TTRanks tangent_ranks(const TangentVector& v) {
    Index d = v.ndims();
    std::vector<Index> rr(static_cast<size_t>(d) + 1, 1);
    for (Index k = 1; k < d; ++k) rr[static_cast<size_t>(k)] = 2 * v.base_ranks()[k];
    return TTRanks(std::move(rr));
}

}  // namespace

TensorTrain tangent_to_tt(const TangentVector& v, Index i) {
    if (i < 0 || i >= v.batch_size()) {
        throw std::out_of_range("tangent_to_tt: batch index out of range");
    }
    return TensorTrain(v.shape(), tangent_ranks(v), tangent_cores(v, i));
}

TensorTrainBatch tangent_to_tt_batch(const TangentVector& v) {
    TTRanks rr = tangent_ranks(v);
    Index b = v.batch_size();
    auto cores = alloc_cores(b, v.shape(), rr);
    for (Index i = 0; i < b; ++i) {
        auto obj = tangent_cores(v, i);
        for (Index k = 0; k < v.ndims(); ++k) {
            auto& dst = cores[static_cast<size_t>(k)];
            const auto& src = obj[static_cast<size_t>(k)];
            std::copy(src.begin(), src.end(),
                      dst.begin() + static_cast<std::ptrdiff_t>(i * static_cast<Index>(src.size())));
        }
    }
    return TensorTrainBatch(b, v.shape(), std::move(rr), std::move(cores));
}

GramMatrix tangent_gram(const TangentVector& v) {
    Index b = v.batch_size();
    Index d = v.ndims();
    GramMatrix g(b, b);
    parallel::for_range(b, [&](Index lo, Index hi) {
        for (Index i = lo; i < hi; ++i) {
            for (Index j = i; j < b; ++j) {
                double s = 0.0;
                for (Index k = 0; k < d; ++k) {
                    const auto& di = v.delta(i, k);
                    const auto& dj = v.delta(j, k);
                    Index len = static_cast<Index>(di.size());
                    CMapRM a(di.data(), 1, len);
                    CMapRM bb(dj.data(), 1, len);
                    s += a.row(0).dot(bb.row(0));
                    gemm_count(1, 1, len);
                }
                g(i, j) = s;
            }
        }
    });
    for (Index i = 0; i < b; ++i)
        for (Index j = 0; j < i; ++j) g(i, j) = g(j, i);
    return g;
}

double gauge_residual(const TangentVector& v, Index i) {
    Index d = v.ndims();
    double worst = 0.0;
    for (Index k = 0; k + 1 < d; ++k) {
        Index rows = v.base_ranks()[k] * v.shape().mode_dim(k);
        Index r1 = v.base_ranks()[k + 1];
        CMapRM U(v.base_left()[static_cast<size_t>(k)].data(), rows, r1);
        CMapRM D(v.delta(i, k).data(), rows, r1);
        worst = std::max(worst, (U.transpose() * D).norm());
    }
    return worst;
}

}  // namespace tt
