#pragma once

#include <cstdint>
#include <vector>

namespace tt {

using Index = std::ptrdiff_t;

/// Per-mode dimension metadata. A shape is either a plain tensor shape
/// (d mode sizes) or a TT-matrix shape (d pairs of row/column sizes).
class TTShape {
public:
    static TTShape tensor(std::vector<Index> dims);
    static TTShape matrix(std::vector<Index> row_dims, std::vector<Index> col_dims);

    bool is_matrix() const { return is_matrix_; }
    Index ndims() const { return static_cast<Index>(row_dims_.size()); }

    Index row_dim(Index k) const { return row_dims_[static_cast<size_t>(k)]; }
    Index col_dim(Index k) const { return is_matrix_ ? col_dims_[static_cast<size_t>(k)] : 1; }
    /// Combined mode size: n_k for tensors, m_k*n_k for matrices.
    Index mode_dim(Index k) const { return row_dim(k) * col_dim(k); }

    const std::vector<Index>& row_dims() const { return row_dims_; }
    const std::vector<Index>& col_dims() const { return col_dims_; }

    Index total_rows() const;
    Index total_cols() const;
    /// Number of elements of the represented dense object.
    Index total_elements() const { return total_rows() * total_cols(); }

    bool operator==(const TTShape&) const = default;

private:
    TTShape(bool is_matrix, std::vector<Index> rows, std::vector<Index> cols);

    bool is_matrix_ = false;
    std::vector<Index> row_dims_;
    std::vector<Index> col_dims_;  // empty for tensors
};

/// Rank tuple (r_0 .. r_d), boundary ranks fixed at 1.
class TTRanks {
public:
    explicit TTRanks(std::vector<Index> ranks);
    /// All-ones rank tuple for d modes.
    static TTRanks unit(Index d);

    Index order() const { return static_cast<Index>(ranks_.size()) - 1; }
    Index operator[](Index k) const { return ranks_[static_cast<size_t>(k)]; }
    const std::vector<Index>& values() const { return ranks_; }
    Index max() const;

    bool operator==(const TTRanks&) const = default;

private:
    std::vector<Index> ranks_;
};

}  // namespace tt
