#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mdpc/bounds.hpp"
#include "mdpc/construct.hpp"
#include "mdpc/sparse_matrix.hpp"
#include "mdpc/stats.hpp"

namespace mdpc {

struct TrialPlan {
    std::uint32_t t = 0;
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 0;
    std::uint32_t max_iterations = 1;
    unsigned threads = 1;  // 0 = available parallelism
};

struct ExperimentRecord {
    TrialPlan plan;
    std::uint64_t failures = 0;        // output differs from the error (any reason)
    std::uint64_t miscorrections = 0;  // zero syndrome but wrong word; subset of failures
    double dfr_point = 0;
    BinomialInterval dfr_95;  // Clopper-Pearson
    std::map<std::uint32_t, std::uint64_t> residual_weight_histogram;  // after iteration 1
    double residual_mean = 0;
    double wall_time_s = 0;  // excluded from the reproducibility contract
};

// Decodes `trials` uniform weight-t corruptions of the zero codeword.
// Trial i draws its error from an independent stream seeded
// derive_seed(master_seed, i), so records are byte-identical across reruns
// and worker counts.
ExperimentRecord run_dfr(const SparseBinaryMatrix& m, const TrialPlan& plan);

struct CoincidencePlan {
    GallagerParams params;
    std::uint32_t matrices = 20;
    std::uint32_t pairs_per_matrix = 2000;
    std::uint64_t seed = 0;
};

struct CoincidenceReport {
    std::vector<double> observed;  // index = intersection value, 0..v
    std::vector<double> expected;
    double coincidence_prob = 0;  // (w-1)/(n-1)
    std::uint64_t pairs_total = 0;
    ChiSquareResult chi;
};

// Samples matrices and random distinct column pairs, histograms the pairwise
// intersection numbers, and tests them against Binomial(v, (w-1)/(n-1)).
CoincidenceReport coincidence_test(const CoincidencePlan& plan);

struct PercentileEstimate {
    std::uint32_t s0 = 0;
    double percentile = 0;
    std::vector<std::uint32_t> values;  // sorted max_s over the samples
};

// Smallest s0 such that at least `percentile` of the sampled matrices have
// max_s <= s0. Requires samples >= 5.
PercentileEstimate estimate_s_percentile(const QcParams& params, std::uint32_t samples,
                                         double percentile = 0.20);
PercentileEstimate estimate_s_percentile(const GallagerParams& params, std::uint32_t samples,
                                         double percentile = 0.20, unsigned threads = 1);

struct SearchRanges {
    std::vector<std::uint32_t> w_values;  // even: v = w/2
    std::vector<std::uint32_t> n_values;  // even: QC with p = n/2; scanned ascending
    std::uint32_t samples = 50;
    double percentile = 0.20;
    std::uint64_t seed = 0;
};

struct SearchRow {
    std::uint32_t w = 0;
    std::uint32_t n = 0;
    std::uint32_t s = 0;       // percentile estimate at this grid point
    std::uint32_t radius = 0;  // floor((w/2) / 2s)
    double log2_bound = 0;     // NaN for scenario I, -inf for a zero-error certificate
    bool meets = false;
};

struct SearchResult {
    std::vector<SearchRow> evaluated;
    std::vector<SearchRow> best;  // per w: the smallest feasible n
};

// QC grid scan: for each w the n values are tried in increasing order until
// the scenario criterion holds (radius >= t for scenario I, otherwise
// log2 bound <= -lambda_bits). Throws BudgetExhausted when no grid point is
// feasible.
SearchResult search_scenario_params(Scenario scenario, std::uint32_t t, double lambda_bits,
                                    const SearchRanges& ranges);

}  // namespace mdpc
