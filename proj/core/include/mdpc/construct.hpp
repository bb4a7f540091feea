#pragma once

#include <cstdint>
#include <optional>

#include "mdpc/mdpc_code.hpp"

namespace mdpc {

// Parameters of the permutation-block model: r rows, n columns, column weight
// v, row weight w, with w | n, v | r and r*w = n*v.
struct GallagerParams {
    std::uint32_t n = 0;
    std::uint32_t w = 0;
    std::uint32_t v = 0;
    std::uint32_t r = 0;
    std::uint64_t seed = 0;
};

// Fills r = n*v/w. Throws ValidationError if the divisibility conditions fail.
GallagerParams gallager_params(std::uint32_t n, std::uint32_t w, std::uint32_t v,
                               std::uint64_t seed);

struct QcParams {
    std::uint32_t block_size = 0;   // p; code length is 2p
    std::uint32_t half_weight = 0;  // weight of each circulant block, w/2
    std::uint64_t seed = 0;
};

struct ConstructionBudget {
    std::uint32_t max_attempts = 256;
    std::uint32_t target_s = 0;
};

// Sidecar emitted with every certified construction.
struct Certificate {
    std::uint32_t s = 0;
    std::uint32_t radius = 0;
    std::uint32_t attempts = 0;  // attempts consumed, accepted one included
    std::uint64_t seed = 0;      // per-attempt seed that produced the accepted matrix
    std::uint32_t target_s = 0;
    bool degenerate_no_intersection = false;
};

struct CertifiedCode {
    MdpcCode code;
    Certificate certificate;
};

// Default rejection threshold ceil(2.5 * ln n / ln ln n); the 2.5 is (2 + eps)
// with eps = 0.5. Requires n >= 3.
std::uint32_t default_target_s(std::uint32_t n, double eps = 0.5);

// P_{n,w}: n/w rows, row i has support {iw, ..., iw+w-1}.
SparseBinaryMatrix base_block(std::uint32_t n, std::uint32_t w);

// Stacks v independently column-permuted copies of base_block(n, w).
// Deterministic in (params, seed); the permutations are recorded in the
// construction provenance.
MdpcCode sample_gallager(const GallagerParams& params);

// Uniform (w/2)-subsets h0, h1 of {0, ..., p-1}, one seeded stream.
QcMdpcKey sample_qc(const QcParams& params);

// Rejection sampling: attempt k runs the base sampler with seed
// derive_seed(params.seed, k) and accepts the first matrix whose maximum
// column intersection is <= budget.target_s. Throws BudgetExhausted when
// max_attempts samples all miss the target.
CertifiedCode construct_certified(const GallagerParams& params, const ConstructionBudget& budget);
CertifiedCode construct_certified(const QcParams& params, const ConstructionBudget& budget);

}  // namespace mdpc
