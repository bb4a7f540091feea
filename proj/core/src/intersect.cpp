#include "mdpc/intersect.hpp"

#include <algorithm>
#include <future>
#include <string>
#include <unordered_map>
#include <vector>

#include "mdpc/errors.hpp"

namespace mdpc {

std::uint64_t IntersectionProfile::total_pairs() const {
    std::uint64_t n = 0;
    for (const auto& [value, count] : histogram) n += count;
    return n;
}

std::uint32_t intersection_number(const SparseBinaryMatrix& m, std::uint32_t j, std::uint32_t jp) {
    if (j >= m.cols() || jp >= m.cols())
        throw ValidationError("intersection_number: column index out of range");
    if (j == jp) throw ValidationError("intersection_number: j == j'");
    const auto& a = m.col_support(j);
    const auto& b = m.col_support(jp);
    std::uint32_t count = 0;
    std::size_t x = 0, y = 0;
    while (x < a.size() && y < b.size()) {
        if (a[x] < b[y]) ++x;
        else if (a[x] > b[y]) ++y;
        else { ++count; ++x; ++y; }
    }
    return count;
}

namespace {

using PairCounts = std::unordered_map<std::uint64_t, std::uint32_t>;

// Keys encode (j, j') with j < j' as j * cols + j', so smaller key means
// lexicographically smaller pair.
PairCounts accumulate_rows(const SparseBinaryMatrix& m, std::uint32_t row_begin,
                           std::uint32_t row_end) {
    PairCounts counts;
    const std::uint64_t cols = m.cols();
    for (std::uint32_t i = row_begin; i < row_end; ++i) {
        const auto& support = m.row_support(i);
        for (std::size_t a = 0; a < support.size(); ++a)
            for (std::size_t b = a + 1; b < support.size(); ++b)
                ++counts[support[a] * cols + support[b]];
    }
    return counts;
}

IntersectionProfile profile_from_counts(const PairCounts& counts, std::uint64_t cols) {
    IntersectionProfile profile;
    std::uint64_t key_min = ~std::uint64_t{0};
    for (const auto& [key, value] : counts) {
        ++profile.histogram[value];
        if (value > profile.max_s || (value == profile.max_s && key < key_min)) {
            profile.max_s = value;
            key_min = key;
        }
    }
    const std::uint64_t all_pairs = cols * (cols - 1) / 2;
    const std::uint64_t zero_pairs = all_pairs - counts.size();
    if (zero_pairs > 0) profile.histogram[0] += zero_pairs;
    if (profile.max_s == 0) key_min = 0 * cols + 1;  // any disjoint pair; pick the smallest
    profile.argmax_pair = {static_cast<std::uint32_t>(key_min / cols),
                           static_cast<std::uint32_t>(key_min % cols)};
    return profile;
}

}  // namespace

IntersectionProfile max_column_intersection(const SparseBinaryMatrix& m, unsigned threads) {
    if (m.cols() < 2) throw ValidationError("max_column_intersection: need at least two columns");
    if (threads == 0) threads = 1;
    threads = std::min<unsigned>(threads, std::max<std::uint32_t>(m.rows(), 1));

    PairCounts counts;
    if (threads == 1 || m.rows() < 2 * threads) {
        counts = accumulate_rows(m, 0, m.rows());
    } else {
        std::vector<std::future<PairCounts>> parts;
        const std::uint32_t chunk = (m.rows() + threads - 1) / threads;
        for (unsigned k = 0; k < threads; ++k) {
            const std::uint32_t lo = k * chunk;
            const std::uint32_t hi = std::min(m.rows(), lo + chunk);
            if (lo >= hi) break;
            parts.push_back(std::async(std::launch::async, accumulate_rows, std::cref(m), lo, hi));
        }
        counts = parts.front().get();
        for (std::size_t k = 1; k < parts.size(); ++k)
            for (const auto& [key, value] : parts[k].get()) counts[key] += value;
    }
    return profile_from_counts(counts, m.cols());
}

IntersectionProfile qc_max_intersection(const QcMdpcKey& key) {
    key.validate();
    const std::uint32_t p = key.block_size;
    if (p < 2) throw ValidationError("qc_max_intersection: block_size must be at least 2");

    // Multiplicity of each circular difference within h0, within h1, and h0 vs h1.
    std::vector<std::uint32_t> within0(p, 0), within1(p, 0), cross(p, 0);
    auto diff = [p](std::uint32_t a, std::uint32_t b) { return a >= b ? a - b : a + p - b; };
    for (auto a : key.h0)
        for (auto b : key.h0)
            if (a != b) ++within0[diff(a, b)];
    for (auto a : key.h1)
        for (auto b : key.h1)
            if (a != b) ++within1[diff(a, b)];
    for (auto a : key.h0)
        for (auto b : key.h1) ++cross[diff(a, b)];

    IntersectionProfile profile;
    // Witness pairs per distance class, lexicographically smallest first:
    // block 0 at distance d: (0, min(d, p-d)); block 1: (p, p + min(d, p-d));
    // cross at aligned distance d: (0, p + (p - d) % p).
    std::pair<std::uint32_t, std::uint32_t> argmax{0, 0};
    bool have_argmax = false;
    auto consider = [&](std::uint32_t value, std::pair<std::uint32_t, std::uint32_t> pair) {
        if (value < profile.max_s) return;
        if (value > profile.max_s || !have_argmax || pair < argmax) argmax = pair;
        profile.max_s = value;
        have_argmax = true;
    };

    for (std::uint32_t d = 1; d <= p / 2; ++d) {
        const std::uint64_t pairs = (2 * d == p) ? p / 2 : p;
        profile.histogram[within0[d]] += pairs;
        profile.histogram[within1[d]] += pairs;
        consider(within0[d], {0, d});
        consider(within1[d], {p, p + d});
    }
    for (std::uint32_t d = 0; d < p; ++d) {
        profile.histogram[cross[d]] += p;
        consider(cross[d], {0, p + (p - d) % p});
    }
    profile.argmax_pair = argmax;
    return profile;
}

RadiusResult guaranteed_radius(std::uint32_t v_min, std::uint32_t s) {
    if (v_min == 0) throw ValidationError("guaranteed_radius: column weight must be positive");
    if (s == 0) return {v_min / 2, true};
    return {v_min / (2 * s), false};
}

}  // namespace mdpc
