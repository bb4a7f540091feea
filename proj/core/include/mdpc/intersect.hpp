#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "mdpc/mdpc_code.hpp"
#include "mdpc/sparse_matrix.hpp"

namespace mdpc {

// Distribution of pairwise column intersection numbers.
struct IntersectionProfile {
    std::uint32_t max_s = 0;
    // intersection value -> number of unordered column pairs attaining it;
    // counts sum to cols*(cols-1)/2.
    std::map<std::uint32_t, std::uint64_t> histogram;
    // Lexicographically smallest pair (j < j') realizing max_s.
    std::pair<std::uint32_t, std::uint32_t> argmax_pair{0, 0};

    std::uint64_t total_pairs() const;
};

// |col(j) ∩ col(j')|. Throws ValidationError if j == j' or out of range.
std::uint32_t intersection_number(const SparseBinaryMatrix& m, std::uint32_t j, std::uint32_t jp);

// Full profile via a sparse pair accumulator: only pairs that co-occur in some
// row are touched, so the cost is sum over rows of C(row_weight, 2) increments.
// Row work may be partitioned over `threads` with a deterministic merge.
IntersectionProfile max_column_intersection(const SparseBinaryMatrix& m, unsigned threads = 1);

// Same profile for a QC key without expanding the matrix. Intersections of
// columns at aligned circular distance d are multiplicities of d in the
// difference multisets {a - a' mod p} of the key halves (within-block pairs use
// one half against itself, cross-block pairs use h0 against h1), so the whole
// profile costs O(w^2 + p).
IntersectionProfile qc_max_intersection(const QcMdpcKey& key);

struct RadiusResult {
    std::uint32_t radius = 0;
    // s = 0 means no two columns share a row; the floor(v/2s) formula does not
    // apply and the reported radius falls back to floor(v_min / 2).
    bool degenerate_no_intersection = false;
};

// Majority-logic certified radius floor(v_min / (2s)) for one parallel
// bit-flipping iteration.
RadiusResult guaranteed_radius(std::uint32_t v_min, std::uint32_t s);

}  // namespace mdpc
