#pragma once

#include <Eigen/Core>
#include <vector>

#include "tt/linalg.hpp"
#include "tt/tensor_train.hpp"

namespace tt {

/// A point of the tangent space at a fixed-rank base B, stored as per-mode
/// delta cores plus the left- and right-orthogonalized cores of B. Deltas for
/// k < d satisfy the gauge condition (left-unfolded U_k applied to delta_k
/// vanishes), which makes the decomposition unique. May carry a batch of
/// delta sets anchored at the same base.
class TangentVector {
public:
    TangentVector(TTShape shape, TTRanks base_ranks,
                  std::vector<std::vector<double>> base_left,
                  std::vector<std::vector<double>> base_right,
                  std::vector<std::vector<std::vector<double>>> deltas, bool is_batch);

    const TTShape& shape() const { return shape_; }
    const TTRanks& base_ranks() const { return ranks_; }
    Index ndims() const { return shape_.ndims(); }
    bool is_batch() const { return is_batch_; }
    Index batch_size() const { return static_cast<Index>(deltas_.size()); }

    const std::vector<std::vector<double>>& base_left() const { return base_left_; }
    const std::vector<std::vector<double>>& base_right() const { return base_right_; }
    /// Delta core k of batch member i, extents (r_{k-1}, n_k, r_k).
    const std::vector<double>& delta(Index i, Index k) const {
        return deltas_[static_cast<size_t>(i)][static_cast<size_t>(k)];
    }
    const std::vector<std::vector<std::vector<double>>>& deltas() const { return deltas_; }

    /// True when `other` is anchored at the same base (cores equal within tol).
    bool shares_base_with(const TangentVector& other, double tol = 1e-14) const;

private:
    TTShape shape_;
    TTRanks ranks_;
    std::vector<std::vector<double>> base_left_;
    std::vector<std::vector<double>> base_right_;
    std::vector<std::vector<std::vector<double>>> deltas_;  // [member][mode]
    bool is_batch_;
};

/// Orthogonal projection of `what` onto the tangent space at `where`.
/// Errors out if `where` is rank-deficient after orthogonalization.
TangentVector project(const TensorTrain& what, const TensorTrain& where);
TangentVector project(const TensorTrainBatch& what, const TensorTrain& where);

/// Fused projection of the weighted batch sum, P_B(sum_i c_i A_i), without
/// forming the rank-(b*r_A) intermediate. Empty weights mean all ones.
TangentVector project_sum(const TensorTrainBatch& what, const TensorTrain& where,
                          const Eigen::VectorXd& weights = Eigen::VectorXd());

/// Fused projection of a matrix-vector product, P_base(A c), carrying the
/// matrix contraction inside the environment sweeps.
TangentVector project_matmul(const TensorTrain& a, const TensorTrainBatch& c,
                             const TensorTrain& base);
TangentVector project_matmul(const TensorTrain& a, const TensorTrain& c,
                             const TensorTrain& base);

/// Convert batch member i back to an explicit TT of interior ranks 2*r_B.
TensorTrain tangent_to_tt(const TangentVector& v, Index i = 0);
TensorTrainBatch tangent_to_tt_batch(const TangentVector& v);

/// Gram matrix of a batch of tangent vectors sharing one base. Cross-mode
/// terms vanish under the gauge condition, so G_ij = sum_k <delta_k^i, delta_k^j>.
GramMatrix tangent_gram(const TangentVector& v);

/// Max gauge residual ||U_k^T delta_k|| over k < d for batch member i.
double gauge_residual(const TangentVector& v, Index i = 0);

}  // namespace tt
