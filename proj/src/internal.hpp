#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tt/tensor_train.hpp"

namespace tt::internal {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapRM = Eigen::Map<RowMat>;
using CMapRM = Eigen::Map<const RowMat>;
using StridedRM = Eigen::Map<RowMat, 0, Eigen::OuterStride<>>;
using CStridedRM = Eigen::Map<const RowMat, 0, Eigen::OuterStride<>>;

/// In-place view of one TT object's cores. The shape/ranks pointers may
/// belong to a reinterpreting caller (e.g. a tensor viewed as an n x 1
/// TT-matrix for matvec).
struct TTView {
    const TTShape* shape = nullptr;
    const TTRanks* ranks = nullptr;
    std::vector<const double*> cores;

    Index ndims() const { return shape->ndims(); }
    Index rank(Index k) const { return (*ranks)[k]; }
    const double* core(Index k) const { return cores[static_cast<size_t>(k)]; }
    Index core_size(Index k) const {
        return rank(k) * shape->mode_dim(k) * rank(k + 1);
    }
};

inline TTView view_of(const TensorTrain& t) {
    TTView v{&t.shape(), &t.ranks(), {}};
    v.cores.reserve(static_cast<size_t>(t.ndims()));
    for (Index k = 0; k < t.ndims(); ++k) v.cores.push_back(t.core(k).data());
    return v;
}

inline TTView view_of(const TensorTrainBatch& t, Index i) {
    TTView v{&t.shape(), &t.ranks(), {}};
    v.cores.reserve(static_cast<size_t>(t.ndims()));
    for (Index k = 0; k < t.ndims(); ++k) v.cores.push_back(t.core_span(k, i).data());
    return v;
}

/// Broadcast rule for batch sizes: equal, or one side 1.
inline Index broadcast_size(Index a, Index b) {
    if (a == b) return a;
    if (a == 1) return b;
    if (b == 1) return a;
    throw std::invalid_argument("incompatible batch sizes " + std::to_string(a) + " and " +
                                std::to_string(b));
}

inline void check_same_shape(const TTShape& a, const TTShape& b, const char* op) {
    if (!(a == b)) {
        throw std::invalid_argument(std::string(op) + ": operand shapes differ");
    }
}

/// Allocate batch core buffers (batch axis outermost) for the given layout.
inline std::vector<std::vector<double>> alloc_cores(Index b, const TTShape& shape,
                                                    const TTRanks& ranks) {
    std::vector<std::vector<double>> cores;
    cores.reserve(static_cast<size_t>(shape.ndims()));
    for (Index k = 0; k < shape.ndims(); ++k) {
        cores.emplace_back(static_cast<size_t>(b * ranks[k] * shape.mode_dim(k) * ranks[k + 1]),
                           0.0);
    }
    return cores;
}

/// Mutable per-object core pointers into batch buffers.
inline std::vector<double*> object_ptrs(std::vector<std::vector<double>>& cores, Index i,
                                        const TTShape& shape, const TTRanks& ranks) {
    std::vector<double*> p;
    p.reserve(cores.size());
    for (Index k = 0; k < shape.ndims(); ++k) {
        Index sz = ranks[k] * shape.mode_dim(k) * ranks[k + 1];
        p.push_back(cores[static_cast<size_t>(k)].data() + i * sz);
    }
    return p;
}

/// Uniform handle over a single object or a batch for broadcasting binary ops.
struct BatchArg {
    Index b = 1;
    bool is_batch = false;
    const TTShape* shape = nullptr;
    const TTRanks* ranks = nullptr;
    std::function<TTView(Index)> at;
};

inline BatchArg batch_arg(const TensorTrain& t) {
    return {1, false, &t.shape(), &t.ranks(), [&t](Index) { return view_of(t); }};
}

inline BatchArg batch_arg(const TensorTrainBatch& t) {
    return {t.batch_size(), true, &t.shape(), &t.ranks(),
            [&t](Index i) { return view_of(t, i); }};
}

}  // namespace tt::internal
