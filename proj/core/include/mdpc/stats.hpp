#pragma once

#include <cstdint>
#include <vector>

namespace mdpc {

struct ChiSquareResult {
    double statistic = 0;
    unsigned df = 0;
    double p_value = 1;
    unsigned merged_bins = 0;  // bin count after enforcing the expected-count rule
};

// Pearson goodness-of-fit. Adjacent bins are merged left to right until every
// expected count reaches min_expected (a trailing light bin folds into its
// neighbor). observed and expected must have equal length and equal totals up
// to rounding; df = merged_bins - 1.
ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected, double min_expected = 5.0);

struct BinomialInterval {
    double low = 0;
    double high = 1;
};

// Exact two-sided Clopper-Pearson interval; chosen over normal approximations
// because zero-failure runs are the common case at certified radii.
BinomialInterval clopper_pearson(std::uint64_t successes, std::uint64_t trials,
                                 double confidence = 0.95);

}  // namespace mdpc
