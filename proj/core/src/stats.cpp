#include "mdpc/stats.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include <utility>

#include "mdpc/errors.hpp"

namespace mdpc {

ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected, double min_expected) {
    if (observed.size() != expected.size())
        throw ValidationError("chi_square_gof: observed/expected size mismatch");
    if (observed.empty()) throw ValidationError("chi_square_gof: empty input");

    std::vector<std::pair<double, double>> bins;  // (obs, exp) after merging
    double obs_acc = 0, exp_acc = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] < 0) throw ValidationError("chi_square_gof: negative expected count");
        obs_acc += observed[i];
        exp_acc += expected[i];
        if (exp_acc >= min_expected) {
            bins.emplace_back(obs_acc, exp_acc);
            obs_acc = exp_acc = 0;
        }
    }
    if (exp_acc > 0 || obs_acc > 0) {
        if (bins.empty()) throw ValidationError("chi_square_gof: too little expected mass to form bins");
        bins.back().first += obs_acc;
        bins.back().second += exp_acc;
    }
    if (bins.size() < 2)
        throw ValidationError("chi_square_gof: need at least two bins after merging");

    ChiSquareResult r;
    r.merged_bins = static_cast<unsigned>(bins.size());
    r.df = r.merged_bins - 1;
    for (const auto& [obs, exp] : bins) {
        const double d = obs - exp;
        r.statistic += d * d / exp;
    }
    boost::math::chi_squared_distribution<double> dist(r.df);
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    return r;
}

BinomialInterval clopper_pearson(std::uint64_t successes, std::uint64_t trials,
                                 double confidence) {
    if (trials == 0) throw ValidationError("clopper_pearson: trials must be positive");
    if (successes > trials) throw ValidationError("clopper_pearson: successes exceed trials");
    if (!(confidence > 0 && confidence < 1))
        throw ValidationError("clopper_pearson: confidence must be in (0, 1)");

    using dist = boost::math::binomial_distribution<double>;
    const double alpha = (1 - confidence) / 2;
    BinomialInterval ci;
    ci.low = dist::find_lower_bound_on_p(static_cast<double>(trials),
                                         static_cast<double>(successes), alpha);
    ci.high = dist::find_upper_bound_on_p(static_cast<double>(trials),
                                          static_cast<double>(successes), alpha);
    return ci;
}

}  // namespace mdpc
