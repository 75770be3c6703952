#include "tt/shape.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tt {

namespace {

void check_dims(const std::vector<Index>& dims, const char* what) {
    if (dims.empty()) {
        throw std::invalid_argument(std::string(what) + ": need at least one mode");
    }
    for (size_t k = 0; k < dims.size(); ++k) {
        if (dims[k] < 1) {
            throw std::invalid_argument(std::string(what) + ": dimension of mode " +
                                        std::to_string(k) + " must be positive, got " +
                                        std::to_string(dims[k]));
        }
    }
}

}  // namespace

TTShape::TTShape(bool is_matrix, std::vector<Index> rows, std::vector<Index> cols)
    : is_matrix_(is_matrix), row_dims_(std::move(rows)), col_dims_(std::move(cols)) {}

TTShape TTShape::tensor(std::vector<Index> dims) {
    check_dims(dims, "TTShape::tensor");
    return TTShape(false, std::move(dims), {});
}

TTShape TTShape::matrix(std::vector<Index> row_dims, std::vector<Index> col_dims) {
    check_dims(row_dims, "TTShape::matrix rows");
    check_dims(col_dims, "TTShape::matrix cols");
    if (row_dims.size() != col_dims.size()) {
        throw std::invalid_argument("TTShape::matrix: row/col mode counts differ (" +
                                    std::to_string(row_dims.size()) + " vs " +
                                    std::to_string(col_dims.size()) + ")");
    }
    return TTShape(true, std::move(row_dims), std::move(col_dims));
}

Index TTShape::total_rows() const {
    Index p = 1;
    for (Index d : row_dims_) p *= d;
    return p;
}

Index TTShape::total_cols() const {
    if (!is_matrix_) return 1;
    Index p = 1;
    for (Index d : col_dims_) p *= d;
    return p;
}

TTRanks::TTRanks(std::vector<Index> ranks) : ranks_(std::move(ranks)) {
    if (ranks_.size() < 2) {
        throw std::invalid_argument("TTRanks: need d+1 >= 2 entries");
    }
    if (ranks_.front() != 1 || ranks_.back() != 1) {
        throw std::invalid_argument("TTRanks: boundary ranks must be 1, got (" +
                                    std::to_string(ranks_.front()) + ", " +
                                    std::to_string(ranks_.back()) + ")");
    }
    for (size_t k = 0; k < ranks_.size(); ++k) {
        if (ranks_[k] < 1) {
            throw std::invalid_argument("TTRanks: rank " + std::to_string(k) +
                                        " must be positive, got " + std::to_string(ranks_[k]));
        }
    }
}

TTRanks TTRanks::unit(Index d) {
    return TTRanks(std::vector<Index>(static_cast<size_t>(d) + 1, 1));
}

Index TTRanks::max() const {
    Index m = 1;
    for (Index r : ranks_) m = std::max(m, r);
    return m;
}

}  // namespace tt
