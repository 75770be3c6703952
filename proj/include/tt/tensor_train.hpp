#pragma once

#include <span>
#include <vector>

#include "tt/shape.hpp"

namespace tt {

/// One tensor (or linear operator) in the Tensor Train format: an ordered
/// chain of dense cores. Core k has extents (r_{k-1}, n_k, r_k) for tensors
/// and (r_{k-1}, m_k, n_k, r_k) for matrices, stored row-major.
///
/// Immutable after construction and safe to share across threads.
class TensorTrain {
public:
    TensorTrain(TTShape shape, TTRanks ranks, std::vector<std::vector<double>> cores);

    const TTShape& shape() const { return shape_; }
    const TTRanks& ranks() const { return ranks_; }
    Index ndims() const { return shape_.ndims(); }
    bool is_matrix() const { return shape_.is_matrix(); }

    const std::vector<double>& core(Index k) const { return cores_[static_cast<size_t>(k)]; }
    const std::vector<std::vector<double>>& cores() const { return cores_; }
    /// Elements of core k: r_{k-1} * mode_dim(k) * r_k.
    Index core_size(Index k) const;

private:
    TTShape shape_;
    TTRanks ranks_;
    std::vector<std::vector<double>> cores_;
};

/// A batch of b TT objects of identical shape and ranks. Core k holds all b
/// members contiguously, batch axis outermost, so member i's core is the
/// contiguous slab [i*core_size(k), (i+1)*core_size(k)).
class TensorTrainBatch {
public:
    TensorTrainBatch(Index batch_size, TTShape shape, TTRanks ranks,
                     std::vector<std::vector<double>> cores);

    Index batch_size() const { return batch_size_; }
    const TTShape& shape() const { return shape_; }
    const TTRanks& ranks() const { return ranks_; }
    Index ndims() const { return shape_.ndims(); }
    bool is_matrix() const { return shape_.is_matrix(); }

    const std::vector<double>& core(Index k) const { return cores_[static_cast<size_t>(k)]; }
    /// Per-member size of core k.
    Index core_size(Index k) const;
    /// View of member i's slab of core k.
    std::span<const double> core_span(Index k, Index i) const;

    /// Copy member i out as a standalone TensorTrain.
    TensorTrain object(Index i) const;

private:
    Index batch_size_;
    TTShape shape_;
    TTRanks ranks_;
    std::vector<std::vector<double>> cores_;
};

}  // namespace tt
