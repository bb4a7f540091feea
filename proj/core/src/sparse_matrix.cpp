#include "mdpc/sparse_matrix.hpp"

#include <string>
#include <utility>

#include "mdpc/binary_word.hpp"
#include "mdpc/errors.hpp"

namespace mdpc {

SparseBinaryMatrix::SparseBinaryMatrix(std::uint32_t rows, std::uint32_t cols,
                                       std::vector<std::vector<std::uint32_t>> row_supports)
    : rows_(rows), cols_(cols), row_supports_(std::move(row_supports)) {
    if (row_supports_.size() != rows_)
        throw ValidationError("matrix: row_supports size " + std::to_string(row_supports_.size()) +
                              " != rows " + std::to_string(rows_));
    for (std::uint32_t i = 0; i < rows_; ++i) check_support(cols_, row_supports_[i], "matrix row");

    col_supports_.resize(cols_);
    std::vector<std::uint32_t> weights(cols_, 0);
    for (std::uint32_t i = 0; i < rows_; ++i)
        for (auto j : row_supports_[i]) ++weights[j];
    for (std::uint32_t j = 0; j < cols_; ++j) col_supports_[j].reserve(weights[j]);
    for (std::uint32_t i = 0; i < rows_; ++i)
        for (auto j : row_supports_[i]) col_supports_[j].push_back(i);
}

std::uint32_t SparseBinaryMatrix::min_col_weight() const {
    std::uint32_t m = rows_;  // a column can hold at most `rows_` entries
    for (std::uint32_t j = 0; j < cols_; ++j)
        m = std::min(m, col_weight(j));
    return m;
}

std::uint64_t SparseBinaryMatrix::entry_count() const {
    std::uint64_t n = 0;
    for (const auto& r : row_supports_) n += r.size();
    return n;
}

std::optional<SparseBinaryMatrix::Regularity> SparseBinaryMatrix::regularity() const {
    if (rows_ == 0 || cols_ == 0) return std::nullopt;
    const std::uint32_t w = row_weight(0);
    for (std::uint32_t i = 1; i < rows_; ++i)
        if (row_weight(i) != w) return std::nullopt;
    const std::uint32_t v = col_weight(0);
    for (std::uint32_t j = 1; j < cols_; ++j)
        if (col_weight(j) != v) return std::nullopt;
    return Regularity{v, w};
}

SparseBinaryMatrix transpose_supports(const SparseBinaryMatrix& m) {
    return SparseBinaryMatrix(m.cols(), m.rows(), m.col_supports());
}

}  // namespace mdpc
