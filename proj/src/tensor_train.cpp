#include "tt/tensor_train.hpp"

#include <stdexcept>
#include <string>

namespace tt {

namespace {

Index expected_core_size(const TTShape& shape, const TTRanks& ranks, Index k) {
    return ranks[k] * shape.mode_dim(k) * ranks[k + 1];
}

void validate(const TTShape& shape, const TTRanks& ranks,
              const std::vector<std::vector<double>>& cores, Index batch_size) {
    Index d = shape.ndims();
    if (ranks.order() != d) {
        throw std::invalid_argument("TensorTrain: rank tuple has " +
                                    std::to_string(ranks.order()) + " interior boundaries but " +
                                    std::to_string(d) + " modes");
    }
    if (static_cast<Index>(cores.size()) != d) {
        throw std::invalid_argument("TensorTrain: expected " + std::to_string(d) +
                                    " cores, got " + std::to_string(cores.size()));
    }
    for (Index k = 0; k < d; ++k) {
        Index want = batch_size * expected_core_size(shape, ranks, k);
        Index got = static_cast<Index>(cores[static_cast<size_t>(k)].size());
        if (got != want) {
            throw std::invalid_argument("TensorTrain: core " + std::to_string(k) + " has " +
                                        std::to_string(got) + " elements, extents require " +
                                        std::to_string(want));
        }
    }
}

}  // namespace

TensorTrain::TensorTrain(TTShape shape, TTRanks ranks, std::vector<std::vector<double>> cores)
    : shape_(std::move(shape)), ranks_(std::move(ranks)), cores_(std::move(cores)) {
    validate(shape_, ranks_, cores_, 1);
}

Index TensorTrain::core_size(Index k) const { return expected_core_size(shape_, ranks_, k); }

TensorTrainBatch::TensorTrainBatch(Index batch_size, TTShape shape, TTRanks ranks,
                                   std::vector<std::vector<double>> cores)
    : batch_size_(batch_size),
      shape_(std::move(shape)),
      ranks_(std::move(ranks)),
      cores_(std::move(cores)) {
    if (batch_size_ < 1) {
        throw std::invalid_argument("TensorTrainBatch: batch size must be positive, got " +
                                    std::to_string(batch_size_));
    }
    validate(shape_, ranks_, cores_, batch_size_);
}

Index TensorTrainBatch::core_size(Index k) const {
    return expected_core_size(shape_, ranks_, k);
}

std::span<const double> TensorTrainBatch::core_span(Index k, Index i) const {
    Index sz = core_size(k);
    return {core(k).data() + i * sz, static_cast<size_t>(sz)};
}

TensorTrain TensorTrainBatch::object(Index i) const {
    if (i < 0 || i >= batch_size_) {
        throw std::out_of_range("TensorTrainBatch::object: index " + std::to_string(i) +
                                " out of range for batch of " + std::to_string(batch_size_));
    }
    std::vector<std::vector<double>> cores;
    cores.reserve(static_cast<size_t>(shape_.ndims()));
    for (Index k = 0; k < shape_.ndims(); ++k) {
        auto s = core_span(k, i);
        cores.emplace_back(s.begin(), s.end());
    }
    return TensorTrain(shape_, ranks_, std::move(cores));
}

}  // namespace tt
