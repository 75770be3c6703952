#include "tt/dense.hpp"

#include <stdexcept>
#include <string>

namespace tt {

Index element_count(const std::vector<Index>& dims) {
    Index p = 1;
    for (Index d : dims) {
        if (d < 1) throw std::invalid_argument("DenseTensor: nonpositive dimension");
        p *= d;
    }
    return p;
}

DenseTensor::DenseTensor(std::vector<Index> d, std::vector<double> v)
    : dims(std::move(d)), data(std::move(v)) {
    if (element_count(dims) != static_cast<Index>(data.size())) {
        throw std::invalid_argument("DenseTensor: data size " + std::to_string(data.size()) +
                                    " does not match extents");
    }
}

DenseTensor::DenseTensor(std::vector<Index> d)
    : dims(std::move(d)), data(static_cast<size_t>(element_count(dims)), 0.0) {}

}  // namespace tt
