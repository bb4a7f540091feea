#include "mdpc/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <thread>
#include <utility>
#include <vector>

#include "mdpc/decode.hpp"
#include "mdpc/errors.hpp"
#include "mdpc/intersect.hpp"
#include "mdpc/logprob.hpp"
#include "mdpc/rng.hpp"

namespace mdpc {

namespace {

unsigned resolve_threads(unsigned requested, std::uint64_t work_items) {
    unsigned t = requested != 0 ? requested : std::thread::hardware_concurrency();
    if (t == 0) t = 1;
    if (work_items < t) t = static_cast<unsigned>(work_items);
    return std::max(t, 1u);
}

}  // namespace

ExperimentRecord run_dfr(const SparseBinaryMatrix& m, const TrialPlan& plan) {
    if (plan.trials == 0) throw ValidationError("run_dfr: trials must be at least 1");
    if (plan.max_iterations == 0) throw ValidationError("run_dfr: max_iterations must be at least 1");
    if (plan.t > m.cols()) throw ValidationError("run_dfr: t exceeds the code length");

    const auto start = std::chrono::steady_clock::now();
    const std::uint32_t n = m.cols();

    struct Partial {
        std::uint64_t failures = 0;
        std::uint64_t miscorrections = 0;
        std::map<std::uint32_t, std::uint64_t> hist;
    };

    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        Partial part;
        for (std::uint64_t i = begin; i < end; ++i) {
            Rng rng(derive_seed(plan.master_seed, i));
            BinaryWord error(n, rng.subset(n, plan.t));

            const auto first = bf_iteration(m, error);
            ++part.hist[first.word.weight()];

            const auto report = decode(m, error, plan.max_iterations);
            const bool corrected = report.success && report.output.is_zero();
            if (!corrected) ++part.failures;
            if (report.success && !report.output.is_zero()) ++part.miscorrections;
        }
        return part;
    };

    const unsigned workers = resolve_threads(plan.threads, plan.trials);
    std::vector<Partial> parts;
    if (workers == 1) {
        parts.push_back(run_range(0, plan.trials));
    } else {
        std::vector<std::future<Partial>> futures;
        const std::uint64_t chunk = (plan.trials + workers - 1) / workers;
        for (unsigned k = 0; k < workers; ++k) {
            const std::uint64_t begin = k * chunk;
            const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, plan.trials);
            if (begin >= end) break;
            futures.push_back(
                std::async(std::launch::async, [&run_range, begin, end] { return run_range(begin, end); }));
        }
        for (auto& f : futures) parts.push_back(f.get());
    }

    ExperimentRecord record;
    record.plan = plan;
    for (const auto& part : parts) {
        record.failures += part.failures;
        record.miscorrections += part.miscorrections;
        for (const auto& [weight, count] : part.hist) record.residual_weight_histogram[weight] += count;
    }
    record.dfr_point = static_cast<double>(record.failures) / static_cast<double>(plan.trials);
    record.dfr_95 = clopper_pearson(record.failures, plan.trials);

    double weighted = 0;
    for (const auto& [weight, count] : record.residual_weight_histogram)
        weighted += static_cast<double>(weight) * static_cast<double>(count);
    record.residual_mean = weighted / static_cast<double>(plan.trials);

    record.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

CoincidenceReport coincidence_test(const CoincidencePlan& plan) {
    if (plan.matrices == 0 || plan.pairs_per_matrix == 0)
        throw ValidationError("coincidence_test: matrices and pairs_per_matrix must be positive");
    const std::uint32_t n = plan.params.n;
    const std::uint32_t v = plan.params.v;
    const std::uint32_t w = plan.params.w;
    if (n < 2) throw ValidationError("coincidence_test: need at least two columns");

    CoincidenceReport report;
    report.observed.assign(v + 1, 0.0);
    report.coincidence_prob = static_cast<double>(w - 1) / static_cast<double>(n - 1);

    for (std::uint32_t mi = 0; mi < plan.matrices; ++mi) {
        GallagerParams params = plan.params;
        params.seed = derive_seed(plan.seed, 2ull * mi);
        const MdpcCode code = sample_gallager(params);

        Rng pair_rng(derive_seed(plan.seed, 2ull * mi + 1));
        for (std::uint32_t k = 0; k < plan.pairs_per_matrix; ++k) {
            const auto j = static_cast<std::uint32_t>(pair_rng.below(n));
            auto jp = static_cast<std::uint32_t>(pair_rng.below(n - 1));
            if (jp >= j) ++jp;
            const std::uint32_t value = intersection_number(code.matrix, j, jp);
            ++report.observed[std::min(value, v)];
        }
    }

    report.pairs_total = static_cast<std::uint64_t>(plan.matrices) * plan.pairs_per_matrix;
    report.expected.resize(v + 1);
    const double q = report.coincidence_prob;
    for (std::uint32_t i = 0; i <= v; ++i) {
        const double log_pmf = log_binom(v, i) + (i == 0 ? 0.0 : i * std::log(q)) +
                               (i == v ? 0.0 : (v - i) * std::log1p(-q));
        report.expected[i] = static_cast<double>(report.pairs_total) * std::exp(log_pmf);
    }
    report.chi = chi_square_gof(report.observed, report.expected);
    return report;
}

namespace {

PercentileEstimate percentile_from_values(std::vector<std::uint32_t> values, double percentile) {
    std::sort(values.begin(), values.end());
    const auto k = values.size();
    const auto rank = static_cast<std::size_t>(std::ceil(percentile * static_cast<double>(k)));
    PercentileEstimate est;
    est.percentile = percentile;
    est.s0 = values[std::max<std::size_t>(rank, 1) - 1];
    est.values = std::move(values);
    return est;
}

void check_percentile_args(std::uint32_t samples, double percentile) {
    if (samples < 5) throw ValidationError("estimate_s_percentile: need at least 5 samples");
    if (!(percentile > 0 && percentile <= 1))
        throw ValidationError("estimate_s_percentile: percentile must be in (0, 1]");
}

}  // namespace

PercentileEstimate estimate_s_percentile(const QcParams& params, std::uint32_t samples,
                                         double percentile) {
    check_percentile_args(samples, percentile);
    std::vector<std::uint32_t> values;
    values.reserve(samples);
    for (std::uint32_t i = 0; i < samples; ++i) {
        QcParams sample = params;
        sample.seed = derive_seed(params.seed, i);
        values.push_back(qc_max_intersection(sample_qc(sample)).max_s);
    }
    return percentile_from_values(std::move(values), percentile);
}

PercentileEstimate estimate_s_percentile(const GallagerParams& params, std::uint32_t samples,
                                         double percentile, unsigned threads) {
    check_percentile_args(samples, percentile);
    std::vector<std::uint32_t> values;
    values.reserve(samples);
    for (std::uint32_t i = 0; i < samples; ++i) {
        GallagerParams sample = params;
        sample.seed = derive_seed(params.seed, i);
        values.push_back(max_column_intersection(sample_gallager(sample).matrix, threads).max_s);
    }
    return percentile_from_values(std::move(values), percentile);
}

SearchResult search_scenario_params(Scenario scenario, std::uint32_t t, double lambda_bits,
                                    const SearchRanges& ranges) {
    if (ranges.w_values.empty() || ranges.n_values.empty())
        throw ValidationError("search_scenario_params: empty search ranges");

    std::vector<std::uint32_t> n_values = ranges.n_values;
    std::sort(n_values.begin(), n_values.end());

    SearchResult result;
    for (const std::uint32_t w : ranges.w_values) {
        if (w == 0 || w % 2 != 0)
            throw ValidationError("search_scenario_params: w values must be positive and even");
        for (const std::uint32_t n : n_values) {
            if (n % 2 != 0)
                throw ValidationError("search_scenario_params: n values must be even (QC block pair)");
            if (w > n) continue;

            const std::uint64_t point_seed = derive_seed(derive_seed(ranges.seed, w), n);
            const auto est = estimate_s_percentile(QcParams{n / 2, w / 2, point_seed},
                                                   ranges.samples, ranges.percentile);

            SearchRow row;
            row.w = w;
            row.n = n;
            row.s = est.s0;
            row.radius = guaranteed_radius(w / 2, est.s0).radius;
            row.log2_bound = std::numeric_limits<double>::quiet_NaN();
            if (scenario == Scenario::I) {
                row.meets = row.radius >= t;
            } else {
                ScenarioParams sp;
                sp.n = n;
                sp.w = w;
                sp.t = t;
                sp.s = est.s0;
                const auto sres = scenario_dfr(sp, scenario);
                row.log2_bound = sres.certified_zero_error ? -std::numeric_limits<double>::infinity()
                                                           : sres.bound->log2_bound;
                row.meets = sres.certified_zero_error || row.log2_bound <= -lambda_bits;
            }
            result.evaluated.push_back(row);
            if (row.meets) {
                result.best.push_back(row);
                break;
            }
        }
    }
    if (result.best.empty())
        throw BudgetExhausted("search_scenario_params: no feasible grid point in the given ranges");
    return result;
}

}  // namespace mdpc
