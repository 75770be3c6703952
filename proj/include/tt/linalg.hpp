#pragma once

#include <Eigen/Core>

#include "tt/tensor_train.hpp"

namespace tt {

/// Matrix of pairwise inner products G_ij = <x_i, y_j>.
using GramMatrix = Eigen::MatrixXd;

// TT-matrix product; interior ranks multiply. Batch inputs broadcast
// ({1,b} x {1,b}) and are combined memberwise.
TensorTrain matmul(const TensorTrain& a, const TensorTrain& b);
TensorTrainBatch matmul(const TensorTrainBatch& a, const TensorTrainBatch& b);
TensorTrainBatch matmul(const TensorTrainBatch& a, const TensorTrain& b);
TensorTrainBatch matmul(const TensorTrain& a, const TensorTrainBatch& b);

// TT-matrix times TT tensor (the vector seen as an n x 1 TT-matrix).
TensorTrain matvec(const TensorTrain& a, const TensorTrain& x);
TensorTrainBatch matvec(const TensorTrainBatch& a, const TensorTrainBatch& x);
TensorTrainBatch matvec(const TensorTrainBatch& a, const TensorTrain& x);
TensorTrainBatch matvec(const TensorTrain& a, const TensorTrainBatch& x);

// Full contraction <x, y> via a single left-to-right environment sweep.
double flat_inner(const TensorTrain& x, const TensorTrain& y);
Eigen::VectorXd flat_inner(const TensorTrainBatch& x, const TensorTrainBatch& y);
Eigen::VectorXd flat_inner(const TensorTrainBatch& x, const TensorTrain& y);
Eigen::VectorXd flat_inner(const TensorTrain& x, const TensorTrainBatch& y);

/// All-pairs inner products between two batches.
GramMatrix pairwise_flat_inner(const TensorTrainBatch& x, const TensorTrainBatch& y);

/// Frobenius norm. The default path right-orthogonalizes and reads the norm
/// off the first core; the differentiable path is sqrt(max(<x,x>, 0)).
double frobenius_norm(const TensorTrain& x, bool differentiable = false);
Eigen::VectorXd frobenius_norm(const TensorTrainBatch& x, bool differentiable = false);

/// Swap the row/col axes of every core; dense transpose, exactly.
TensorTrain transpose(const TensorTrain& a);
TensorTrainBatch transpose(const TensorTrainBatch& a);

}  // namespace tt
