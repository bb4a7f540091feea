#include "mdpc/mdpc_code.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "mdpc/binary_word.hpp"
#include "mdpc/errors.hpp"

namespace mdpc {

void QcMdpcKey::validate() const {
    if (block_size == 0) throw ValidationError("qc key: block_size must be positive");
    if (h0.empty() || h0.size() != h1.size())
        throw ValidationError("qc key: h0 and h1 must be nonempty and the same size");
    if (h0.size() > block_size) throw ValidationError("qc key: half weight exceeds block size");
    check_support(block_size, h0, "qc key h0");
    check_support(block_size, h1, "qc key h1");
}

SparseBinaryMatrix expand_qc(const QcMdpcKey& key) {
    key.validate();
    const std::uint32_t p = key.block_size;
    std::vector<std::vector<std::uint32_t>> rows(p);
    for (std::uint32_t i = 0; i < p; ++i) {
        auto& row = rows[i];
        row.reserve(key.h0.size() + key.h1.size());
        for (auto a : key.h0) row.push_back(a + i < p ? a + i : a + i - p);
        for (auto a : key.h1) row.push_back(p + (a + i < p ? a + i : a + i - p));
        // Each half is a rotation of a sorted list: one split point to fix up.
        auto fix = [&row](std::size_t lo, std::size_t hi) {
            for (std::size_t k = lo + 1; k < hi; ++k)
                if (row[k] < row[k - 1]) {
                    std::rotate(row.begin() + lo, row.begin() + k, row.begin() + hi);
                    break;
                }
        };
        fix(0, key.h0.size());
        fix(key.h0.size(), row.size());
    }
    return SparseBinaryMatrix(p, 2 * p, std::move(rows));
}

MdpcCode MdpcCode::from_matrix(SparseBinaryMatrix m, Construction c) {
    MdpcCode code;
    code.matrix = std::move(m);
    code.construction = std::move(c);
    if (auto reg = code.matrix.regularity(); reg && reg->col_weight > 0 &&
        reg->col_weight < reg->row_weight) {
        code.mdpc_type = MdpcType{reg->col_weight, reg->row_weight};
    }
    return code;
}

}  // namespace mdpc
