#include "tt/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include "internal.hpp"
#include "tt/decomp.hpp"
#include "tt/parallel.hpp"

namespace tt {

using namespace internal;

namespace {

// ---------------------------------------------------------------------------
// matmul

void check_matmul_dims(const TTShape& a, const TTShape& b) {
    if (a.ndims() != b.ndims()) {
        throw std::invalid_argument("matmul: operand mode counts differ");
    }
    for (Index k = 0; k < a.ndims(); ++k) {
        if (a.col_dim(k) != b.row_dim(k)) {
            throw std::invalid_argument("matmul: mode " + std::to_string(k) +
                                        " contraction mismatch: " + std::to_string(a.col_dim(k)) +
                                        " vs " + std::to_string(b.row_dim(k)));
        }
    }
}

/// C_k[(a1 a2), i, j, (b1 b2)] = sum_s A_k[a1, i, s, b1] B_k[a2, s, j, b2]
void matmul_kernel(const TTView& a, const TTView& b, const std::vector<double*>& out) {
    Index d = a.ndims();
    for (Index k = 0; k < d; ++k) {
        Index m = a.shape->row_dim(k);
        Index s = a.shape->col_dim(k);
        Index n = b.shape->col_dim(k);
        Index ra0 = a.rank(k), ra1 = a.rank(k + 1);
        Index rb0 = b.rank(k), rb1 = b.rank(k + 1);
        Index rc1 = ra1 * rb1;
        const double* A = a.core(k);
        const double* B = b.core(k);
        double* O = out[static_cast<size_t>(k)];
        for (Index a1 = 0; a1 < ra0; ++a1)
            for (Index i = 0; i < m; ++i)
                for (Index ss = 0; ss < s; ++ss) {
                    const double* arow = A + ((a1 * m + i) * s + ss) * ra1;
                    for (Index b1 = 0; b1 < ra1; ++b1) {
                        double alpha = arow[b1];
                        for (Index a2 = 0; a2 < rb0; ++a2) {
                            const double* bblock = B + (a2 * s + ss) * n * rb1;
                            double* oblock =
                                O + ((a1 * rb0 + a2) * m + i) * n * rc1 + b1 * rb1;
                            for (Index j = 0; j < n; ++j) {
                                const double* brow = bblock + j * rb1;
                                double* orow = oblock + j * rc1;
                                for (Index b2 = 0; b2 < rb1; ++b2) orow[b2] += alpha * brow[b2];
                            }
                        }
                    }
                }
    }
}

struct MatmulOut {
    TTShape shape;
    TTRanks ranks;
    Index batch;
    std::vector<std::vector<double>> cores;
};

TTRanks product_ranks(const TTRanks& a, const TTRanks& b) {
    std::vector<Index> r(static_cast<size_t>(a.order()) + 1);
    for (Index k = 0; k <= a.order(); ++k) r[static_cast<size_t>(k)] = a[k] * b[k];
    return TTRanks(std::move(r));
}

MatmulOut matmul_impl(const BatchArg& a, const BatchArg& b, const TTShape& oshape) {
    check_matmul_dims(*a.shape, *b.shape);
    Index bs = broadcast_size(a.b, b.b);
    TTRanks oranks = product_ranks(*a.ranks, *b.ranks);
    auto cores = alloc_cores(bs, oshape, oranks);
    parallel::for_range(bs, [&](Index lo, Index hi) {
        for (Index i = lo; i < hi; ++i) {
            auto out = object_ptrs(cores, i, oshape, oranks);
            matmul_kernel(a.at(a.b == 1 ? 0 : i), b.at(b.b == 1 ? 0 : i), out);
        }
    });
    return {oshape, std::move(oranks), bs, std::move(cores)};
}

TTShape matmul_shape(const TTShape& a, const TTShape& b) {
    return TTShape::matrix(a.row_dims(), b.col_dims());
}

void require_matrix(const TTShape& s, const char* op) {
    if (!s.is_matrix()) throw std::invalid_argument(std::string(op) + ": operand is not a TT-matrix");
}

// Views a tensor TT as an (n_k x 1) TT-matrix without copying. Keeps the
// fabricated shape alive alongside the views.
struct AsMatrix {
    TTShape shape;
    BatchArg arg;

    explicit AsMatrix(const BatchArg& src)
        : shape(TTShape::matrix(src.shape->row_dims(),
                                std::vector<Index>(static_cast<size_t>(src.shape->ndims()), 1))),
          arg(src) {
        arg.shape = &shape;
        auto inner = src.at;
        const TTShape* sh = &shape;
        arg.at = [inner, sh](Index i) {
            TTView v = inner(i);
            v.shape = sh;
            return v;
        };
    }
};

// ---------------------------------------------------------------------------
// flat_inner

double flat_inner_kernel(const TTView& x, const TTView& y) {
    Index d = x.ndims();
    RowMat env = RowMat::Ones(1, 1);  // rx_k x ry_k
    RowMat t, t2;
    for (Index k = 0; k < d; ++k) {
        Index mode = x.shape->mode_dim(k);
        Index rx0 = x.rank(k), rx1 = x.rank(k + 1);
        Index ry0 = y.rank(k), ry1 = y.rank(k + 1);
        CMapRM X(x.core(k), rx0, mode * rx1);
        CMapRM Y(y.core(k), ry0 * mode, ry1);
        t.noalias() = env.transpose() * X;  // (ry0, mode*rx1)
        CMapRM t2v(t.data(), ry0 * mode, rx1);
        env.noalias() = t2v.transpose() * Y;  // (rx1, ry1)
    }
    return env(0, 0);
}

void check_inner_shapes(const TTShape& a, const TTShape& b) {
    check_same_shape(a, b, "flat_inner");
}

Eigen::VectorXd flat_inner_impl(const BatchArg& x, const BatchArg& y) {
    check_inner_shapes(*x.shape, *y.shape);
    Index bs = broadcast_size(x.b, y.b);
    Eigen::VectorXd out(bs);
    parallel::for_range(bs, [&](Index lo, Index hi) {
        for (Index i = lo; i < hi; ++i) {
            out[i] = flat_inner_kernel(x.at(x.b == 1 ? 0 : i), y.at(y.b == 1 ? 0 : i));
        }
    });
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// public surface

TensorTrain matmul(const TensorTrain& a, const TensorTrain& b) {
    require_matrix(a.shape(), "matmul");
    require_matrix(b.shape(), "matmul");
    auto r = matmul_impl(batch_arg(a), batch_arg(b), matmul_shape(a.shape(), b.shape()));
    return TensorTrain(r.shape, r.ranks, std::move(r.cores));
}

TensorTrainBatch matmul(const TensorTrainBatch& a, const TensorTrainBatch& b) {
    require_matrix(a.shape(), "matmul");
    require_matrix(b.shape(), "matmul");
    auto r = matmul_impl(batch_arg(a), batch_arg(b), matmul_shape(a.shape(), b.shape()));
    return TensorTrainBatch(r.batch, r.shape, r.ranks, std::move(r.cores));
}

TensorTrainBatch matmul(const TensorTrainBatch& a, const TensorTrain& b) {
    require_matrix(a.shape(), "matmul");
    require_matrix(b.shape(), "matmul");
    auto r = matmul_impl(batch_arg(a), batch_arg(b), matmul_shape(a.shape(), b.shape()));
    return TensorTrainBatch(r.batch, r.shape, r.ranks, std::move(r.cores));
}

TensorTrainBatch matmul(const TensorTrain& a, const TensorTrainBatch& b) {
    require_matrix(a.shape(), "matmul");
    require_matrix(b.shape(), "matmul");
    auto r = matmul_impl(batch_arg(a), batch_arg(b), matmul_shape(a.shape(), b.shape()));
    return TensorTrainBatch(r.batch, r.shape, r.ranks, std::move(r.cores));
}

namespace {

MatmulOut matvec_impl(const BatchArg& a, const BatchArg& x) {
    if (x.shape->is_matrix()) {
        throw std::invalid_argument("matvec: second operand must be a tensor TT");
    }
    AsMatrix xm(x);
    MatmulOut r = matmul_impl(a, xm.arg, matmul_shape(*a.shape, xm.shape));
    // (m_k x 1) matrix cores are laid out exactly like tensor cores
    r.shape = TTShape::tensor(a.shape->row_dims());
    return r;
}

}  // namespace

TensorTrain matvec(const TensorTrain& a, const TensorTrain& x) {
    require_matrix(a.shape(), "matvec");
    auto r = matvec_impl(batch_arg(a), batch_arg(x));
    return TensorTrain(r.shape, r.ranks, std::move(r.cores));
}

TensorTrainBatch matvec(const TensorTrainBatch& a, const TensorTrainBatch& x) {
    require_matrix(a.shape(), "matvec");
    auto r = matvec_impl(batch_arg(a), batch_arg(x));
    return TensorTrainBatch(r.batch, r.shape, r.ranks, std::move(r.cores));
}

TensorTrainBatch matvec(const TensorTrainBatch& a, const TensorTrain& x) {
    require_matrix(a.shape(), "matvec");
    auto r = matvec_impl(batch_arg(a), batch_arg(x));
    return TensorTrainBatch(r.batch, r.shape, r.ranks, std::move(r.cores));
}

TensorTrainBatch matvec(const TensorTrain& a, const TensorTrainBatch& x) {
    require_matrix(a.shape(), "matvec");
    auto r = matvec_impl(batch_arg(a), batch_arg(x));
    return TensorTrainBatch(r.batch, r.shape, r.ranks, std::move(r.cores));
}

double flat_inner(const TensorTrain& x, const TensorTrain& y) {
    check_inner_shapes(x.shape(), y.shape());
    return flat_inner_kernel(view_of(x), view_of(y));
}

Eigen::VectorXd flat_inner(const TensorTrainBatch& x, const TensorTrainBatch& y) {
    return flat_inner_impl(batch_arg(x), batch_arg(y));
}

Eigen::VectorXd flat_inner(const TensorTrainBatch& x, const TensorTrain& y) {
    return flat_inner_impl(batch_arg(x), batch_arg(y));
}

Eigen::VectorXd flat_inner(const TensorTrain& x, const TensorTrainBatch& y) {
    return flat_inner_impl(batch_arg(x), batch_arg(y));
}

GramMatrix pairwise_flat_inner(const TensorTrainBatch& x, const TensorTrainBatch& y) {
    check_inner_shapes(x.shape(), y.shape());
    Index b1 = x.batch_size(), b2 = y.batch_size();
    GramMatrix g(b1, b2);
    bool same = &x == &y;
    parallel::for_range(b1, [&](Index lo, Index hi) {
        for (Index i = lo; i < hi; ++i) {
            TTView xi = view_of(x, i);
            Index jstart = same ? i : 0;
            for (Index j = jstart; j < b2; ++j) {
                g(i, j) = flat_inner_kernel(xi, view_of(y, j));
            }
        }
    });
    if (same) {
        for (Index i = 0; i < b1; ++i)
            for (Index j = 0; j < i; ++j) g(i, j) = g(j, i);
    }
    return g;
}

double frobenius_norm(const TensorTrain& x, bool differentiable) {
    if (differentiable) {
        return std::sqrt(std::max(flat_inner(x, x), 0.0));
    }
    TensorTrain r = orthogonalize(x, Direction::Right);
    CMapRM c0(r.core(0).data(), 1, r.core_size(0));
    return c0.norm();
}

Eigen::VectorXd frobenius_norm(const TensorTrainBatch& x, bool differentiable) {
    if (differentiable) {
        Eigen::VectorXd ip = flat_inner(x, x);
        return ip.cwiseMax(0.0).cwiseSqrt();
    }
    TensorTrainBatch r = orthogonalize(x, Direction::Right);
    Eigen::VectorXd out(x.batch_size());
    for (Index i = 0; i < x.batch_size(); ++i) {
        auto s = r.core_span(0, i);
        CMapRM c0(s.data(), 1, static_cast<Index>(s.size()));
        out[i] = c0.norm();
    }
    return out;
}

namespace {

std::vector<std::vector<double>> transpose_cores(const BatchArg& a, Index bs) {
    const TTShape& s = *a.shape;
    Index d = s.ndims();
    std::vector<std::vector<double>> cores;
    for (Index k = 0; k < d; ++k) {
        Index r0 = (*a.ranks)[k], r1 = (*a.ranks)[k + 1];
        cores.emplace_back(static_cast<size_t>(bs * r0 * s.mode_dim(k) * r1));
    }
    for (Index i = 0; i < bs; ++i) {
        TTView v = a.at(i);
        for (Index k = 0; k < d; ++k) {
            Index r0 = v.rank(k), r1 = v.rank(k + 1);
            Index m = s.row_dim(k), n = s.col_dim(k);
            const double* A = v.core(k);
            double* O = cores[static_cast<size_t>(k)].data() + i * r0 * m * n * r1;
            for (Index a0 = 0; a0 < r0; ++a0)
                for (Index x = 0; x < m; ++x)
                    for (Index y = 0; y < n; ++y)
                        for (Index b0 = 0; b0 < r1; ++b0)
                            O[((a0 * n + y) * m + x) * r1 + b0] =
                                A[((a0 * m + x) * n + y) * r1 + b0];
        }
    }
    return cores;
}

}  // namespace

TensorTrain transpose(const TensorTrain& a) {
    require_matrix(a.shape(), "transpose");
    auto cores = transpose_cores(batch_arg(a), 1);
    return TensorTrain(TTShape::matrix(a.shape().col_dims(), a.shape().row_dims()), a.ranks(),
                       std::move(cores));
}

TensorTrainBatch transpose(const TensorTrainBatch& a) {
    require_matrix(a.shape(), "transpose");
    auto cores = transpose_cores(batch_arg(a), a.batch_size());
    return TensorTrainBatch(a.batch_size(),
                            TTShape::matrix(a.shape().col_dims(), a.shape().row_dims()),
                            a.ranks(), std::move(cores));
}

}  // namespace tt
