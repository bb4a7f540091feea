#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mdpc/sparse_matrix.hpp"

namespace mdpc {

// Moderate-density type (v, w): column weight v, row weight w, 0 < v < w.
struct MdpcType {
    std::uint32_t v = 0;
    std::uint32_t w = 0;
    bool operator==(const MdpcType&) const = default;
};

// Quasi-cyclic key: H = (H0 | H1), two block_size x block_size circulants.
// Row i of block b is the cyclic shift by i of the first-row support hb, so
// both blocks have row weight |hb| and the full matrix row weight w = |h0| + |h1|.
// Equal halves keep w even and the column weight at w/2.
struct QcMdpcKey {
    std::uint32_t block_size = 0;            // p
    std::vector<std::uint32_t> h0;           // sorted, unique, < p
    std::vector<std::uint32_t> h1;

    std::uint32_t half_weight() const { return static_cast<std::uint32_t>(h0.size()); }
    std::uint32_t row_weight() const { return static_cast<std::uint32_t>(h0.size() + h1.size()); }

    void validate() const;                   // throws ValidationError
    bool operator==(const QcMdpcKey&) const = default;
};

// Materializes the p x 2p parity-check matrix of a QC key.
SparseBinaryMatrix expand_qc(const QcMdpcKey& key);

struct Construction {
    enum class Kind { gallager, quasi_cyclic, imported };
    Kind kind = Kind::imported;
    std::uint64_t seed = 0;
    // Gallager: the v column permutations, one per stacked block.
    std::vector<std::vector<std::uint32_t>> permutations;
    // Quasi-cyclic: the generating key.
    std::optional<QcMdpcKey> key;
};

// A parity-check matrix plus everything certified about it.
struct MdpcCode {
    SparseBinaryMatrix matrix;
    std::optional<MdpcType> mdpc_type;             // set iff matrix is exactly regular
    std::optional<std::uint32_t> max_col_intersection;
    std::optional<std::uint32_t> guaranteed_radius;  // floor(v / (2 * max_col_intersection))
    Construction construction;

    // Builds the code record from a matrix, detecting regularity.
    static MdpcCode from_matrix(SparseBinaryMatrix m, Construction c = {});
};

}  // namespace mdpc
