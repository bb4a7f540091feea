#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace mdpc {

// Sparse binary matrix stored by row supports, with column supports cached at
// construction. Immutable: all mutation paths go through constructors so the
// two views can never drift apart.
class SparseBinaryMatrix {
public:
    SparseBinaryMatrix() = default;

    // Validates every row support (sorted, unique, < cols) and builds the
    // column cache.
    SparseBinaryMatrix(std::uint32_t rows, std::uint32_t cols,
                       std::vector<std::vector<std::uint32_t>> row_supports);

    std::uint32_t rows() const { return rows_; }
    std::uint32_t cols() const { return cols_; }

    const std::vector<std::uint32_t>& row_support(std::uint32_t i) const { return row_supports_[i]; }
    const std::vector<std::uint32_t>& col_support(std::uint32_t j) const { return col_supports_[j]; }
    const std::vector<std::vector<std::uint32_t>>& row_supports() const { return row_supports_; }
    const std::vector<std::vector<std::uint32_t>>& col_supports() const { return col_supports_; }

    std::uint32_t row_weight(std::uint32_t i) const { return static_cast<std::uint32_t>(row_supports_[i].size()); }
    std::uint32_t col_weight(std::uint32_t j) const { return static_cast<std::uint32_t>(col_supports_[j].size()); }

    // Smallest column weight; 0 for an all-zero column.
    std::uint32_t min_col_weight() const;

    std::uint64_t entry_count() const;

    // (v, w) if every column has weight v and every row weight w, else nullopt.
    struct Regularity { std::uint32_t col_weight; std::uint32_t row_weight; };
    std::optional<Regularity> regularity() const;

    bool operator==(const SparseBinaryMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && row_supports_ == other.row_supports_;
    }

private:
    std::uint32_t rows_ = 0;
    std::uint32_t cols_ = 0;
    std::vector<std::vector<std::uint32_t>> row_supports_;
    std::vector<std::vector<std::uint32_t>> col_supports_;
};

// Transpose by swapping the row/column views.
SparseBinaryMatrix transpose_supports(const SparseBinaryMatrix& m);

}  // namespace mdpc
