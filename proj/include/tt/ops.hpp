#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "tt/dense.hpp"
#include "tt/tensor_train.hpp"

namespace tt {

inline constexpr Index kDefaultFullGuard = 100'000'000;  // elements

/// Wrap a list of dense cores (each 3- or 4-way) as a validated TensorTrain.
/// Adjacent rank extents must chain and boundary ranks must be 1.
TensorTrain from_cores(const std::vector<DenseTensor>& cores);

/// All-ones tensor/matrix with unit ranks.
TensorTrain ones(const TTShape& shape);

/// Rank-1 TT-matrix whose dense form is the identity of size prod(dims).
TensorTrain eye(const std::vector<Index>& dims);

/// Per-object seed stride of random_batch: member i of a batch seeded with s
/// equals member 0 of a batch seeded with s + i * kBatchSeedStride, which
/// makes chunked generation reproducible.
inline constexpr std::uint64_t kBatchSeedStride = 0x9E3779B97F4A7C15ULL;

/// Random TT with i.i.d. Gaussian cores, scaled so the expected Frobenius
/// norm is independent of the requested ranks. Deterministic per seed.
TensorTrain random(const TTShape& shape, const TTRanks& ranks, std::uint64_t seed);
TensorTrainBatch random_batch(Index batch_size, const TTShape& shape, const TTRanks& ranks,
                              std::uint64_t seed);

/// Dense reconstruction. Tensors come back with their mode extents, matrices
/// as (prod rows) x (prod cols), batches with a leading batch axis. Refuses
/// to build more than `guard` elements.
DenseTensor full(const TensorTrain& t, Index guard = kDefaultFullGuard);
DenseTensor full(const TensorTrainBatch& t, Index guard = kDefaultFullGuard);

struct SliceSpec {
    enum class Kind { All, Single, Range };
    Kind kind = Kind::All;
    Index index = 0;                       // Single
    Index start = 0, stop = 0, step = 1;   // Range, half-open

    static SliceSpec all() { return {}; }
    static SliceSpec at(Index i) { return {Kind::Single, i, 0, 0, 1}; }
    static SliceSpec range(Index start, Index stop, Index step = 1) {
        return {Kind::Range, 0, start, stop, step};
    }
};

using SliceResult = std::variant<double, TensorTrain>;

/// Per-mode indexing of a tensor TT. Fixing every mode yields the scalar
/// element; otherwise the indexed modes are absorbed into their neighbors.
SliceResult slice(const TensorTrain& t, const std::vector<SliceSpec>& specs);
/// Matrix variant: one (row_spec, col_spec) pair per mode. A mode's pair must
/// be fixed on both sides or on neither.
SliceResult slice(const TensorTrain& t,
                  const std::vector<std::pair<SliceSpec, SliceSpec>>& specs);

// Elementwise sum; result ranks are the sums of the input ranks.
TensorTrain add(const TensorTrain& a, const TensorTrain& b);
TensorTrainBatch add(const TensorTrainBatch& a, const TensorTrainBatch& b);
TensorTrainBatch add(const TensorTrainBatch& a, const TensorTrain& b);
TensorTrainBatch add(const TensorTrain& a, const TensorTrainBatch& b);

// Elementwise (Hadamard) product; result ranks are the products of the
// input ranks.
TensorTrain multiply(const TensorTrain& a, const TensorTrain& b);
TensorTrainBatch multiply(const TensorTrainBatch& a, const TensorTrainBatch& b);
TensorTrainBatch multiply(const TensorTrainBatch& a, const TensorTrain& b);
TensorTrainBatch multiply(const TensorTrain& a, const TensorTrainBatch& b);

/// Scale by a finite scalar (first core only; ranks unchanged).
TensorTrain multiply(const TensorTrain& a, double scalar);
TensorTrainBatch multiply(const TensorTrainBatch& a, double scalar);

}  // namespace tt
