#include "mdpc/construct.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mdpc/errors.hpp"
#include "mdpc/intersect.hpp"
#include "mdpc/rng.hpp"

namespace mdpc {

namespace {

void validate_gallager(const GallagerParams& p) {
    if (p.n == 0 || p.w == 0 || p.v == 0 || p.r == 0)
        throw ValidationError("gallager: n, w, v, r must all be positive");
    if (p.w > p.n || p.n % p.w != 0)
        throw ValidationError("gallager: w must divide n");
    if (p.r % p.v != 0)
        throw ValidationError("gallager: v must divide r");
    if (static_cast<std::uint64_t>(p.r) * p.w != static_cast<std::uint64_t>(p.n) * p.v)
        throw ValidationError("gallager: need r*w = n*v");
}

void validate_qc(const QcParams& p) {
    if (p.block_size == 0 || p.half_weight == 0)
        throw ValidationError("qc: block_size and half_weight must be positive");
    if (p.half_weight > p.block_size)
        throw ValidationError("qc: half_weight exceeds block size");
}

}  // namespace

GallagerParams gallager_params(std::uint32_t n, std::uint32_t w, std::uint32_t v,
                               std::uint64_t seed) {
    if (w == 0 || n == 0 || w > n || n % w != 0)
        throw ValidationError("gallager_params: w must divide n");
    if (v == 0) throw ValidationError("gallager_params: v must be positive");
    GallagerParams p;
    p.n = n;
    p.w = w;
    p.v = v;
    p.r = static_cast<std::uint32_t>(static_cast<std::uint64_t>(n) / w * v);
    p.seed = seed;
    return p;
}

std::uint32_t default_target_s(std::uint32_t n, double eps) {
    if (n < 3) throw ValidationError("default_target_s: n must be at least 3");
    const double x = (2.0 + eps) * std::log(static_cast<double>(n)) /
                     std::log(std::log(static_cast<double>(n)));
    return static_cast<std::uint32_t>(std::ceil(x));
}

SparseBinaryMatrix base_block(std::uint32_t n, std::uint32_t w) {
    if (w == 0 || n == 0 || w > n || n % w != 0)
        throw ValidationError("base_block: w must divide n");
    const std::uint32_t rows = n / w;
    std::vector<std::vector<std::uint32_t>> supports(rows);
    for (std::uint32_t i = 0; i < rows; ++i) {
        supports[i].resize(w);
        for (std::uint32_t k = 0; k < w; ++k) supports[i][k] = i * w + k;
    }
    return SparseBinaryMatrix(rows, n, std::move(supports));
}

MdpcCode sample_gallager(const GallagerParams& params) {
    validate_gallager(params);
    const std::uint32_t rows_per_block = params.n / params.w;

    Rng rng(params.seed);
    std::vector<std::vector<std::uint32_t>> permutations;
    permutations.reserve(params.v);
    std::vector<std::vector<std::uint32_t>> rows;
    rows.reserve(params.r);

    // A permutation pi partitions [0, n) into n/w cells of w entries; cell i
    // is the support of row i of the column-permuted base block.
    for (std::uint32_t b = 0; b < params.v; ++b) {
        permutations.push_back(rng.permutation(params.n));
        const auto& pi = permutations.back();
        for (std::uint32_t i = 0; i < rows_per_block; ++i) {
            std::vector<std::uint32_t> support(pi.begin() + static_cast<std::size_t>(i) * params.w,
                                               pi.begin() + static_cast<std::size_t>(i + 1) * params.w);
            std::sort(support.begin(), support.end());
            rows.push_back(std::move(support));
        }
    }

    Construction provenance;
    provenance.kind = Construction::Kind::gallager;
    provenance.seed = params.seed;
    provenance.permutations = std::move(permutations);
    return MdpcCode::from_matrix(SparseBinaryMatrix(params.r, params.n, std::move(rows)),
                                 std::move(provenance));
}

QcMdpcKey sample_qc(const QcParams& params) {
    validate_qc(params);
    Rng rng(params.seed);
    QcMdpcKey key;
    key.block_size = params.block_size;
    key.h0 = rng.subset(params.block_size, params.half_weight);
    key.h1 = rng.subset(params.block_size, params.half_weight);
    return key;
}

namespace {

// Shared rejection loop; sample(attempt_seed) -> (code, profile).
template <typename Sampler>
CertifiedCode certify_loop(std::uint64_t master_seed, const ConstructionBudget& budget,
                           std::uint32_t column_weight, Sampler sample) {
    if (budget.max_attempts == 0)
        throw ValidationError("construct_certified: max_attempts must be at least 1");
    for (std::uint32_t attempt = 0; attempt < budget.max_attempts; ++attempt) {
        const std::uint64_t attempt_seed = derive_seed(master_seed, attempt);
        auto [code, profile] = sample(attempt_seed);
        if (profile.max_s > budget.target_s) continue;

        const auto rr = guaranteed_radius(column_weight, profile.max_s);
        code.max_col_intersection = profile.max_s;
        code.guaranteed_radius = rr.radius;

        Certificate cert;
        cert.s = profile.max_s;
        cert.radius = rr.radius;
        cert.attempts = attempt + 1;
        cert.seed = attempt_seed;
        cert.target_s = budget.target_s;
        cert.degenerate_no_intersection = rr.degenerate_no_intersection;
        return CertifiedCode{std::move(code), cert};
    }
    throw BudgetExhausted("construct_certified: no sample with max intersection <= " +
                          std::to_string(budget.target_s) + " in " +
                          std::to_string(budget.max_attempts) + " attempts");
}

}  // namespace

CertifiedCode construct_certified(const GallagerParams& params, const ConstructionBudget& budget) {
    validate_gallager(params);
    return certify_loop(params.seed, budget, params.v, [&](std::uint64_t attempt_seed) {
        GallagerParams attempt = params;
        attempt.seed = attempt_seed;
        MdpcCode code = sample_gallager(attempt);
        auto profile = max_column_intersection(code.matrix);
        return std::make_pair(std::move(code), std::move(profile));
    });
}

CertifiedCode construct_certified(const QcParams& params, const ConstructionBudget& budget) {
    validate_qc(params);
    return certify_loop(params.seed, budget, params.half_weight, [&](std::uint64_t attempt_seed) {
        QcParams attempt = params;
        attempt.seed = attempt_seed;
        QcMdpcKey key = sample_qc(attempt);
        auto profile = qc_max_intersection(key);

        Construction provenance;
        provenance.kind = Construction::Kind::quasi_cyclic;
        provenance.seed = attempt_seed;
        provenance.key = key;
        MdpcCode code = MdpcCode::from_matrix(expand_qc(key), std::move(provenance));
        return std::make_pair(std::move(code), std::move(profile));
    });
}

}  // namespace mdpc
