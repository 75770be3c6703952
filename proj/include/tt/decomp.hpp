#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "tt/dense.hpp"
#include "tt/tensor_train.hpp"

namespace tt {

/// Truncation target for TT-SVD and rounding. max_rank == 0 means unbounded;
/// epsilon is a relative Frobenius tolerance (0 = rank-only truncation),
/// distributed as epsilon/sqrt(d-1) per SVD step.
struct TruncationSpec {
    Index max_rank = 0;
    double epsilon = 0.0;

    static TruncationSpec by_rank(Index r) { return {r, 0.0}; }
    static TruncationSpec by_epsilon(double e) { return {0, e}; }
    static TruncationSpec exact() { return {0, 0.0}; }
};

/// TT-SVD: factor a dense tensor into TT form with total relative error
/// bounded by spec.epsilon and ranks bounded by spec.max_rank.
TensorTrain to_tt_tensor(const DenseTensor& dense, TruncationSpec spec = {});

/// Factor a dense (prod m_k) x (prod n_k) matrix into a TT-matrix over the
/// given per-mode (m_k, n_k) pairs. With two modes and max_rank 1 this is the
/// nearest-Kronecker-product approximation.
TensorTrain to_tt_matrix(const Eigen::MatrixXd& dense,
                         const std::vector<std::pair<Index, Index>>& mode_shape,
                         TruncationSpec spec = {});

enum class Direction { Left, Right };

/// QR sweep establishing left- or right-orthogonal cores (all but the last,
/// resp. first). Reconstruction is unchanged; ranks can only shrink.
TensorTrain orthogonalize(const TensorTrain& t, Direction dir);
TensorTrainBatch orthogonalize(const TensorTrainBatch& t, Direction dir);

/// TT rounding: right-orthogonalize, then truncate left-to-right under the
/// spec. Quasi-optimal within sqrt(d-1) of the best rank-spec approximation.
TensorTrain round(const TensorTrain& t, TruncationSpec spec);
TensorTrainBatch round(const TensorTrainBatch& t, TruncationSpec spec);

}  // namespace tt
