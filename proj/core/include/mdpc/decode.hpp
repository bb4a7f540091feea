#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mdpc/binary_word.hpp"
#include "mdpc/mdpc_code.hpp"
#include "mdpc/sparse_matrix.hpp"

namespace mdpc {

// Per-position counters of one flipping iteration: n_i checks touch position i,
// u_i of them are currently unsatisfied.
struct Counters {
    std::vector<std::uint32_t> total;        // n_i = column weight
    std::vector<std::uint32_t> unsatisfied;  // u_i
};

// H * y over GF(2), one bit per row.
BinaryWord syndrome(const SparseBinaryMatrix& m, const BinaryWord& y);

// One parallel bit-flipping iteration: all u_i are computed from the same
// input word, then every position with u_i > n_i / 2 (strictly; ties stay) is
// flipped at once.
struct IterationResult {
    BinaryWord word;
    Counters counters;
    std::uint32_t flips = 0;
};
IterationResult bf_iteration(const SparseBinaryMatrix& m, const BinaryWord& y);

struct DecodeReport {
    BinaryWord output;
    std::uint32_t iterations_run = 0;
    // Syndrome weight before each iteration plus after the last: always
    // iterations_run + 1 entries.
    std::vector<std::uint32_t> syndrome_weight_trace;
    std::vector<std::uint32_t> flips_trace;  // one entry per iteration run
    bool success = false;                    // final syndrome weight == 0
};

// Runs at most max_iterations flipping rounds, stopping early once the
// syndrome is zero. Never throws on decoding failure; that is a report state.
DecodeReport decode(const SparseBinaryMatrix& m, const BinaryWord& y, std::uint32_t max_iterations);

struct RadiusVerification {
    bool proved = false;
    std::uint64_t patterns_checked = 0;
    // First failing error pattern in enumeration order, if any.
    std::optional<BinaryWord> counterexample;
};

// Decodes every error pattern of weight 1..t with a single iteration and
// checks that the pattern is removed exactly. Throws EnumerationBudgetExceeded
// if sum_k C(n, k) would exceed max_patterns.
RadiusVerification verify_radius_exhaustive(const MdpcCode& code, std::uint32_t t,
                                            std::uint64_t max_patterns = 2'000'000);

}  // namespace mdpc
