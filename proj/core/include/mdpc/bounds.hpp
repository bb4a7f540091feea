#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mdpc/krawtchouk.hpp"

namespace mdpc {

// ---------------------------------------------------------------------------
// Kullback-Leibler divergence and the expansions used by the tail bounds.
// All divergences are in nats.

// KL(p || q) for Bernoulli parameters, with the conventions 0 ln(0/q) = 0 and
// p ln(p/0) = +inf. Infinity is a value, not an error.
double kl(double p, double q);

// Closed form KL(1/2 || 1/2 + delta) = -1/2 ln(1 - 4 delta^2), |delta| < 1/2.
double kl_half_plus_delta(double delta);

// Binary entropy h(a) = -a ln a - (1-a) ln(1-a), nats.
double binary_entropy(double a);

struct KlResidual {
    double kl_value = 0;
    double approx = 0;
    double residual = 0;  // |kl_value - approx|
};

// KL(alpha || delta) against -h(alpha) - alpha ln(delta); valid as delta -> 0+
// with alpha in (0,1). Rejects delta <= 0 and endpoints (RegimeViolation).
KlResidual kl_alpha_delta_check(double alpha, double delta);

// KL(x || y) against x ln(x/y) - x + y; valid for 0 < y < x -> 0. The residual
// is O(x^2). Rejects y <= 0, x >= 1/2 or y >= x (RegimeViolation).
KlResidual kl_xy_check(double x, double y);

// ---------------------------------------------------------------------------
// Binomial tails, natural-log domain.

enum class TailSide { upper, lower };  // P(X >= k) resp. P(X <= k)

// ln P(Bin(v, p) >= k) (or <= k): exact term-by-term log-gamma summation with
// a safe early cutoff past the mode. Matches big-rational tails to 1e-9
// relative for v <= 200.
double binom_tail_exact(std::uint32_t v, double p, std::uint32_t k, TailSide side);

// Same tail, but with p given in log form (for p too small to represent
// linearly). log1mp = ln(1-p).
double binom_tail_exact_logp(std::uint32_t v, double log_p, double log1mp, std::uint32_t k,
                             TailSide side);

// Large-deviation estimate at threshold tau*v, evaluated literally with its
// prefactor:
//   upper, p < tau < 1: (1-p) sqrt(tau) / ((tau-p) sqrt(2 pi v (1-tau))) e^{-v KL(tau||p)}
//   lower, 0 < tau < p: p (sqrt(1-tau)) / ((p-tau) sqrt(2 pi v tau)) e^{-v KL(tau||p)}
// Throws RegimeViolation when tau is on the wrong side of p or at an endpoint.
double binom_tail_ld(std::uint32_t v, double p, double tau, TailSide side);

// ---------------------------------------------------------------------------
// First-iteration flip error probabilities.

enum class PbMode {
    exact_conditional,  // hypergeometric parity over the n-1 other positions
    eps_formula,        // p_b = (1 -+ eps)/2
};

enum class QbMode {
    exact_tail,        // q_b as an exact binomial tail at threshold v/2
    asymptotic_bound,  // (1-eps^2)^{v/2} / (sqrt(v) eps) surrogate, unit constant
};

struct FlipErrorProbs {
    double p0 = 0;  // P(one check of a correct bit is unsatisfied)
    double p1 = 0;  // same for an erroneous bit
    double log_q0 = 0;  // ln P(correct bit flips)     = ln P(Bin(v,p0) > v/2)
    double log_q1 = 0;  // ln P(erroneous bit survives) = ln P(Bin(v,p1) <= v/2)
    std::uint32_t v = 0;
    PbMode p_mode = PbMode::exact_conditional;
    QbMode mode = QbMode::exact_tail;
    double eps_value = 0;
};

FlipErrorProbs flip_error_probs(std::uint32_t n, std::uint32_t w, std::uint32_t v,
                                std::uint32_t t, PbMode p_mode = PbMode::exact_conditional,
                                QbMode q_mode = QbMode::exact_tail);

// ---------------------------------------------------------------------------
// Residual-error tail after one iteration.

struct DfrBound {
    double log2_bound = 0;
    std::uint32_t t_prime = 0;
    // log2 P(Bin(n-t, q0) >= ceil(t'/2)) and log2 P(Bin(t, q1) >= ceil(t'/2));
    // log2_bound is their log-domain sum, reproducible from these two.
    double log2_tail_s0 = 0;
    double log2_tail_s1 = 0;
    // Model assumptions the number rests on: "A1" (independent per-check
    // Bernoulli counters) and optionally "A2(alpha=...)" (residual contraction
    // by factor alpha covers all later iterations).
    std::vector<std::string> assumptions_used;
    std::optional<double> alpha;
};

// P(S >= t') <= P(S0 >= t'/2) + P(S1 >= t'/2) with both halves as exact
// binomial tails in the independent-counter model. Thresholds are integer:
// ceil(t'/2).
DfrBound tail_of_S(std::uint32_t n, std::uint32_t t, std::uint32_t t_prime,
                   const FlipErrorProbs& probs);

// ---------------------------------------------------------------------------
// Dominant terms of the closed-form two-iteration exponent.

struct TheoremExponent {
    // (t'v/4) ln(1-eps^2) + (t'/8) ln n
    double dominant_nats = 0;
    double dominant_bits = 0;
    // Same dominant terms evaluated in long double, as a stability check.
    double dominant_bits_extended = 0;
    // -1/2 ln t', reported separately from the dominant terms.
    double prefactor_nats = 0;
    // |t' ln(t'/t)|: magnitude of the expansion's unresolved remainder. The
    // constant in front of it is not specified, so it is never folded into
    // the dominant value.
    double remainder_nats = 0;
    double eps_value = 0;
};

TheoremExponent theorem_exponent(std::uint32_t n, std::uint32_t v, std::uint32_t w,
                                 std::uint32_t t, std::uint32_t t_prime);

// ---------------------------------------------------------------------------
// Krawtchouk consecutive-ratio check against the closed form
//   (n - 2w + sqrt((n-2w)^2 - 4w(n-w))) / (2(n-w)).

struct RatioCheckRow {
    std::uint32_t x = 0;
    double ratio = 0;     // P_w^n(x) / P_w^n(x-1), exact rationals
    double residual = 0;  // |ratio - closed_form| / closed_form
};

struct RatioCheck {
    double closed_form = 0;
    std::vector<RatioCheckRow> rows;  // x = 1 .. x_max
    double max_residual = 0;
};

// Requires a positive discriminant and x_max <= n/2 - sqrt(w(n-w)) (the
// validity interval of the approximation); otherwise RegimeViolation.
RatioCheck krawtchouk_ratio_check(std::uint32_t n, std::uint32_t w, std::uint32_t x_max);

// ---------------------------------------------------------------------------
// Scenario evaluation.

enum class Scenario { I, II, III, IV };

Scenario scenario_from_string(const std::string& name);  // "I".."IV"
std::string to_string(Scenario s);

struct ScenarioParams {
    std::uint32_t n = 0;
    std::uint32_t w = 0;
    std::uint32_t t = 0;
    std::optional<std::uint32_t> v;  // default w/2 (w must then be even)
    std::optional<std::uint32_t> s;  // max column intersection; required for I, II
    std::optional<double> alpha;     // III/IV contraction factor; defaults 0.5 / 0.75
    PbMode p_mode = PbMode::exact_conditional;
    QbMode q_mode = QbMode::exact_tail;
    // When set (log2, e.g. -80): fills meets_target across every variant and
    // adds an explicit note when none reaches it.
    std::optional<double> target_log2;
};

struct ScenarioResult {
    Scenario scenario = Scenario::I;
    std::uint32_t n = 0, w = 0, t = 0, v = 0;
    std::optional<std::uint32_t> s;
    std::optional<std::uint32_t> radius;  // floor(v/2s) when s is given
    // radius >= t (one-iteration worst-case correction): failure probability
    // is exactly zero, no tail chain involved.
    bool certified_zero_error = false;
    std::optional<DfrBound> bound;  // the scenario's own chain (II, III, IV)
    // Alternative evaluations of the same scenario, name -> log2 value:
    // exact tails with both p modes, the asymptotic q_b surrogate, and the
    // dominant closed-form exponent.
    std::vector<std::pair<std::string, double>> variants;
    std::optional<double> target_log2;
    std::optional<bool> meets_target;
    std::string note;
};

// I: certificate iff floor(v/2s) >= t.
// II: one certified iteration plus a tail on the residual; t' = radius + 1.
// III/IV: t' = ceil(alpha * t) under the contraction assumption.
ScenarioResult scenario_dfr(const ScenarioParams& params, Scenario scenario);

}  // namespace mdpc
