#pragma once

#include <vector>

#include "tt/shape.hpp"

namespace tt {

/// Dense row-major multi-way array. Used for TT cores handed in by the
/// caller, dense reconstructions and TT-SVD inputs.
struct DenseTensor {
    std::vector<Index> dims;
    std::vector<double> data;

    DenseTensor() = default;
    DenseTensor(std::vector<Index> d, std::vector<double> v);
    /// Zero-filled tensor of the given extents.
    explicit DenseTensor(std::vector<Index> d);

    Index size() const { return static_cast<Index>(data.size()); }
    Index ndims() const { return static_cast<Index>(dims.size()); }

    double& operator[](Index i) { return data[static_cast<size_t>(i)]; }
    double operator[](Index i) const { return data[static_cast<size_t>(i)]; }
};

Index element_count(const std::vector<Index>& dims);

}  // namespace tt
