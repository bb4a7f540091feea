#include <doctest.h>

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mdpc/bounds.hpp"
#include "mdpc/errors.hpp"
#include "mdpc/krawtchouk.hpp"
#include "mdpc/logprob.hpp"
#include "mdpc/rng.hpp"

using namespace mdpc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

mpq_class frac(long num, long den) { return mpq_class(num) / den; }

// Three-term recurrence for the normalized Krawtchouk polynomials, as an
// independent route against the defining sum:
//   P_0 = 1,  P_1 = -(n - 2x)/2,
//   P_{k+1} = (-2(n - 2x) P_k - (n - k + 1) P_{k-1}) / (4(k + 1)).
mpq_class kraw_recurrence(std::uint32_t n, std::uint32_t k, std::uint32_t x) {
    const long lin = static_cast<long>(n) - 2 * static_cast<long>(x);
    mpq_class p0 = 1;
    mpq_class p1 = mpq_class(-lin) / 2;
    if (k == 0) return p0;
    if (k == 1) return p1;
    for (std::uint32_t kk = 1; kk < k; ++kk) {
        mpq_class p2 = (mpq_class(-2 * lin) * p1 - mpq_class(static_cast<long>(n - kk + 1)) * p0) /
                       mpq_class(4 * static_cast<long>(kk + 1));
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

// All weight-k subsets of {0..n-1} via lexicographic successor.
template <typename F>
void for_each_subset(std::uint32_t n, std::uint32_t k, F&& f) {
    std::vector<std::uint32_t> c(k);
    for (std::uint32_t i = 0; i < k; ++i) c[i] = i;
    while (true) {
        f(c);
        std::uint32_t i = k;
        while (i > 0 && c[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++c[i - 1];
        for (std::uint32_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

// Brute-force bias: average of (-1)^{|h cap e|} over every weight-w support h,
// with the error fixed to the first t positions.
mpq_class bias_enumerated(std::uint32_t n, std::uint32_t w, std::uint32_t t) {
    mpz_class odd = 0, total = 0;
    for_each_subset(n, w, [&](const std::vector<std::uint32_t>& h) {
        std::uint32_t overlap = 0;
        for (auto j : h)
            if (j < t) ++overlap;
        if (overlap % 2 == 1) ++odd;
        ++total;
    });
    return 1 - 2 * mpq_class(odd) / mpq_class(total);
}

mpq_class binom_tail_rational(std::uint32_t v, const mpq_class& p, std::uint32_t k,
                              TailSide side) {
    mpq_class acc = 0;
    const mpq_class q = 1 - p;
    for (std::uint32_t i = 0; i <= v; ++i) {
        const bool in = side == TailSide::upper ? i >= k : i <= k;
        if (!in) continue;
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), v, i);
        mpq_class term = mpq_class(c);
        for (std::uint32_t j = 0; j < i; ++j) term *= p;
        for (std::uint32_t j = 0; j < v - i; ++j) term *= q;
        acc += term;
    }
    return acc;
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("krawtchouk: spot values") {
    CHECK(krawtchouk(4, 2, 0) == frac(3, 2));
    CHECK(krawtchouk(10, 4, 2) == frac(-7, 8));
    CHECK(krawtchouk(13, 6, 5) == frac(5, 16));
    CHECK(krawtchouk(10, 0, 7) == 1);
    CHECK_THROWS_AS(krawtchouk(4, 5, 0), ValidationError);
    CHECK_THROWS_AS(krawtchouk(4, 2, 5), ValidationError);
}

TEST_CASE("krawtchouk: defining sum matches the three-term recurrence") {
    for (auto [n, k, x] : std::vector<std::array<std::uint32_t, 3>>{
             {20, 7, 3}, {50, 12, 30}, {200, 9, 100}, {7, 7, 7}, {13, 6, 5}})
        CHECK(krawtchouk(n, k, x) == kraw_recurrence(n, k, x));
    Rng r(404);
    for (int rep = 0; rep < 30; ++rep) {
        const auto n = 2 + static_cast<std::uint32_t>(r.below(199));
        const auto k = static_cast<std::uint32_t>(r.below(n + 1));
        const auto x = static_cast<std::uint32_t>(r.below(n + 1));
        CHECK(krawtchouk(n, k, x) == kraw_recurrence(n, k, x));
    }
}

TEST_CASE("bias: dual routes equal the brute-force enumeration") {
    for (std::uint32_t n : {4u, 7u, 10u, 12u})
        for (std::uint32_t w = 1; w <= n; ++w)
            for (std::uint32_t t = 0; t <= n; t += 2) {
                const auto expect = bias_enumerated(n, w, t);
                CHECK(bias_via_krawtchouk(n, w, t) == expect);
                CHECK(bias_via_hypergeometric(n, w, t) == expect);
            }
}

TEST_CASE("bias: known rationals and range") {
    CHECK(bias_via_krawtchouk(10, 4, 2) == frac(-1, 15));
    CHECK(bias_via_hypergeometric(10, 4, 2) == frac(-1, 15));
    // a coincidence worth pinning: t = 3 gives the same value at (10, 4)
    CHECK(bias_via_krawtchouk(10, 4, 3) == frac(-1, 15));

    Rng r(7);
    for (int rep = 0; rep < 25; ++rep) {
        const auto n = 2 + static_cast<std::uint32_t>(r.below(60));
        const auto w = 1 + static_cast<std::uint32_t>(r.below(n));
        const auto t = static_cast<std::uint32_t>(r.below(n + 1));
        const auto d = bias_via_krawtchouk(n, w, t);
        CHECK(d == bias_via_hypergeometric(n, w, t));
        CHECK(d <= 1);
        CHECK(d >= -1);
        CHECK(bias_via_krawtchouk(n, w, 0) == 1);
    }
}

TEST_CASE("bias: exact_bias routing") {
    const auto small = exact_bias(10, 4, 2);
    REQUIRE(small.delta_exact.has_value());
    CHECK(*small.delta_exact == frac(-1, 15));
    CHECK(small.delta == doctest::Approx(-1.0 / 15).epsilon(1e-14));
    CHECK(small.eps_approx == doctest::Approx(std::exp(-1.6)).epsilon(1e-14));

    // past the exact-rational threshold only the float route runs
    const auto big = exact_bias(20000, 100, 100);
    CHECK(!big.delta_exact.has_value());
    CHECK(big.delta == doctest::Approx(bias_float(20000, 100, 100)).epsilon(1e-13));
    CHECK(std::abs(big.delta - big.eps_approx) / big.eps_approx < 0.05);

    // float route against the exact value inside the overlap region
    const auto mid = exact_bias(500, 20, 20);
    REQUIRE(mid.delta_exact.has_value());
    CHECK(bias_float(500, 20, 20) ==
          doctest::Approx(mid.delta_exact->get_d()).epsilon(1e-11));

    CHECK_THROWS_AS(exact_bias(10, 0, 2), ValidationError);
    CHECK_THROWS_AS(exact_bias(10, 11, 2), ValidationError);
    CHECK_THROWS_AS(exact_bias(10, 4, 11), ValidationError);
    CHECK_THROWS_AS(eps(0, 1, 1), ValidationError);
}

TEST_CASE("kl: conventions and closed forms") {
    CHECK(kl(0.5, 0.8) == doctest::Approx(0.22314355131420976).epsilon(1e-15));
    CHECK(kl(0.5, 0.8) == doctest::Approx(kl_half_plus_delta(0.3)).epsilon(1e-15));
    CHECK(kl(0.3, 0.3) == 0);
    CHECK(kl(0.0, 0.25) == doctest::Approx(-std::log(0.75)).epsilon(1e-15));
    CHECK(kl(1.0, 0.25) == doctest::Approx(-std::log(0.25)).epsilon(1e-15));
    CHECK(kl(0.3, 0.0) == kInf);
    CHECK(kl(0.3, 1.0) == kInf);
    CHECK(kl(0.0, 0.0) == 0);
    CHECK(kl(1.0, 1.0) == 0);
    CHECK(binary_entropy(0.5) == doctest::Approx(kLn2).epsilon(1e-15));
    CHECK(binary_entropy(0.0) == 0);
    CHECK(kl_half_plus_delta(0.0) == 0);
    CHECK_THROWS_AS(kl(-0.1, 0.5), ValidationError);
    CHECK_THROWS_AS(kl(0.5, 1.5), ValidationError);
    CHECK_THROWS_AS(kl_half_plus_delta(0.6), ValidationError);
}

TEST_CASE("kl_alpha_delta_check: residual scales linearly in delta") {
    const auto a = kl_alpha_delta_check(0.3, 1e-3);
    const auto b = kl_alpha_delta_check(0.3, 1e-4);
    CHECK(a.kl_value == doctest::Approx(kl(0.3, 1e-3)).epsilon(1e-15));
    // the dropped term is -(1-alpha) ln(1-delta) ~ (1-alpha) delta
    CHECK(a.residual == doctest::Approx(0.7e-3).epsilon(0.01));
    CHECK(a.residual / b.residual == doctest::Approx(10.0).epsilon(0.05));
    CHECK_THROWS_AS(kl_alpha_delta_check(0.0, 0.1), RegimeViolation);
    CHECK_THROWS_AS(kl_alpha_delta_check(1.0, 0.1), RegimeViolation);
    CHECK_THROWS_AS(kl_alpha_delta_check(0.3, 0.0), RegimeViolation);
    CHECK_THROWS_AS(kl_alpha_delta_check(0.3, 1.0), RegimeViolation);
}

TEST_CASE("kl_xy_check: sign of the linear terms and quadratic residual") {
    const auto r = kl_xy_check(1e-3, 1e-4);
    CHECK(r.kl_value == doctest::Approx(1.40299e-3).epsilon(1e-4));
    CHECK(r.approx == doctest::Approx(1e-3 * std::log(10.0) - 1e-3 + 1e-4).epsilon(1e-15));
    CHECK(r.residual < 1e-6);          // O(x^2); here ~0.4 x^2
    CHECK(r.residual > 1e-8);
    // the opposite sign on the linear terms would miss by ~2(x - y), not O(x^2)
    const double flipped = 1e-3 * std::log(10.0) + 1e-3 - 1e-4;
    CHECK(std::abs(r.kl_value - flipped) > 1e-3);

    const auto r10 = kl_xy_check(1e-2, 1e-3);
    CHECK(r10.residual / r.residual == doctest::Approx(100.0).epsilon(0.25));

    CHECK_THROWS_AS(kl_xy_check(0.6, 0.1), RegimeViolation);
    CHECK_THROWS_AS(kl_xy_check(0.3, 0.3), RegimeViolation);
    CHECK_THROWS_AS(kl_xy_check(0.3, 0.0), RegimeViolation);
    CHECK_THROWS_AS(kl_xy_check(0.1, 0.3), RegimeViolation);
}

TEST_CASE("binom_tail_exact: spot values and edge cases") {
    CHECK(binom_tail_exact(10, 0.5, 10, TailSide::upper) ==
          doctest::Approx(-10 * kLn2).epsilon(1e-14));
    const double l = binom_tail_exact(55, 0.20475, 28, TailSide::upper);
    CHECK(std::exp(l) == doctest::Approx(5.32931385259e-7).epsilon(1e-9));

    CHECK(binom_tail_exact(20, 0.3, 0, TailSide::upper) == 0.0);
    CHECK(binom_tail_exact(20, 0.3, 21, TailSide::upper) == kNegInfinity);
    CHECK(binom_tail_exact(20, 0.0, 1, TailSide::upper) == kNegInfinity);
    CHECK(binom_tail_exact(20, 0.0, 0, TailSide::upper) == 0.0);
    CHECK(binom_tail_exact(20, 1.0, 20, TailSide::upper) == 0.0);
    CHECK(binom_tail_exact(20, 0.3, 20, TailSide::lower) == 0.0);
    CHECK(binom_tail_exact(20, 1.0, 19, TailSide::lower) == kNegInfinity);

    for (std::uint32_t k = 1; k <= 12; ++k) {
        const double up = binom_tail_exact(12, 0.37, k, TailSide::upper);
        const double lo = binom_tail_exact(12, 0.37, k - 1, TailSide::lower);
        CHECK(std::exp(up) + std::exp(lo) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(binom_tail_exact(10, 1.5, 3, TailSide::upper), ValidationError);
}

TEST_CASE("binom_tail_exact: big-rational oracle to 1e-9 relative") {
    const std::vector<mpq_class> ps = {frac(1, 4), frac(5, 16), frac(105, 256)};
    for (std::uint32_t v : {20u, 50u, 120u, 200u}) {
        for (const auto& p : ps) {
            const double pd = p.get_d();
            for (std::uint32_t k : {v / 4, v / 2, (3 * v) / 4, v}) {
                for (auto side : {TailSide::upper, TailSide::lower}) {
                    const double got = binom_tail_exact(v, pd, k, side);
                    const double expect = binom_tail_rational(v, p, k, side).get_d();
                    CHECK(std::exp(got) == doctest::Approx(expect).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("binom_tail_exact_logp: agrees with the linear form and reaches tiny p") {
    for (std::uint32_t k : {2u, 7u, 13u}) {
        const double a = binom_tail_exact(30, 0.3, k, TailSide::upper);
        const double b = binom_tail_exact_logp(30, std::log(0.3), std::log(0.7), k,
                                               TailSide::upper);
        CHECK(a == doctest::Approx(b).epsilon(1e-14));
    }
    // p = e^-400 still fits in a double, so ln(1-p) is a real (tiny) value.
    const double tiny = binom_tail_exact_logp(100, -400.0, std::log1p(-std::exp(-400.0)), 1,
                                              TailSide::upper);
    CHECK(tiny == doctest::Approx(std::log(100.0) - 400.0).epsilon(1e-10));
    // p = e^-800 is below the double scale entirely: ln(1-p) rounds to zero
    // and the tail must be recovered from ln p alone.
    const double subrange = binom_tail_exact_logp(100, -800.0, 0.0, 1, TailSide::upper);
    CHECK(subrange == doctest::Approx(std::log(100.0) - 800.0).epsilon(1e-10));
    CHECK_THROWS_AS(binom_tail_exact_logp(10, 0.5, -1.0, 3, TailSide::upper), ValidationError);
}

TEST_CASE("binom_tail_ld: frozen ratios against the exact tail") {
    auto ratio = [](std::uint32_t v, double p) {
        const auto k = v / 2;
        const double ld = binom_tail_ld(v, p, 0.5, TailSide::upper);
        const double ex = binom_tail_exact(v, p, k, TailSide::upper);
        return std::exp(ld - ex);
    };
    CHECK(ratio(50, 0.2) == doctest::Approx(1.02504).epsilon(1e-4));
    CHECK(ratio(50, 0.4) == doctest::Approx(1.24734).epsilon(1e-4));
    CHECK(ratio(1000, 0.4) == doctest::Approx(1.01929).epsilon(1e-4));
    // lower side stays within the same factor band
    const double ld = binom_tail_ld(50, 0.5, 0.2, TailSide::lower);
    const double ex = binom_tail_exact(50, 0.5, 10, TailSide::lower);
    CHECK(std::abs(ld - ex) < std::log(3.0));
}

TEST_CASE("binom_tail_ld: regime guards") {
    CHECK_THROWS_AS(binom_tail_ld(100, 0.2, 0.2, TailSide::upper), RegimeViolation);
    CHECK_THROWS_AS(binom_tail_ld(100, 0.2, 0.1, TailSide::upper), RegimeViolation);
    CHECK_THROWS_AS(binom_tail_ld(100, 0.2, 1.0, TailSide::upper), RegimeViolation);
    CHECK_THROWS_AS(binom_tail_ld(100, 0.2, 0.5, TailSide::lower), RegimeViolation);
    CHECK_THROWS_AS(binom_tail_ld(100, 0.2, 0.0, TailSide::lower), RegimeViolation);
    CHECK_THROWS_AS(binom_tail_ld(0, 0.2, 0.5, TailSide::upper), ValidationError);
}

TEST_CASE("flip_error_probs: eps mode on the frozen small instance") {
    const auto fp = flip_error_probs(100, 10, 5, 4, PbMode::eps_formula, QbMode::exact_tail);
    CHECK(fp.eps_value == doctest::Approx(0.449328964117).epsilon(1e-11));
    CHECK(fp.p0 == doctest::Approx(0.275335517941).epsilon(1e-11));
    CHECK(fp.p1 == doctest::Approx(0.724664482059).epsilon(1e-11));
    CHECK(std::exp(fp.log_q0) == doctest::Approx(0.132018634654).epsilon(1e-9));
    CHECK(fp.log_q0 < 0);
    CHECK(fp.log_q1 < 0);
}

TEST_CASE("flip_error_probs: conditional mode equals subset enumeration at (10,4,2)") {
    // one check of weight 4 through a fixed bit; the other 3 slots range over
    // the 9 remaining positions, t errors live there when the bit is correct
    auto odd_overlap_prob = [](std::uint32_t errors) {
        std::uint64_t odd = 0, total = 0;
        for_each_subset(9, 3, [&](const std::vector<std::uint32_t>& h) {
            std::uint32_t overlap = 0;
            for (auto j : h)
                if (j < errors) ++overlap;
            odd += overlap % 2;
            ++total;
        });
        return static_cast<double>(odd) / static_cast<double>(total);
    };
    const auto fp = flip_error_probs(10, 4, 2, 2, PbMode::exact_conditional, QbMode::exact_tail);
    CHECK(fp.p0 == doctest::Approx(odd_overlap_prob(2)).epsilon(1e-14));
    CHECK(fp.p1 == doctest::Approx(1.0 - odd_overlap_prob(1)).epsilon(1e-14));
}

TEST_CASE("flip_error_probs: degenerate t = 0 and validation") {
    const auto e = flip_error_probs(100, 10, 5, 0, PbMode::eps_formula, QbMode::exact_tail);
    CHECK(e.eps_value == 1.0);
    CHECK(e.p0 == 0.0);
    CHECK(e.p1 == 1.0);
    CHECK(e.log_q0 == kNegInfinity);
    CHECK(e.log_q1 == kNegInfinity);
    const auto c = flip_error_probs(100, 10, 5, 0, PbMode::exact_conditional, QbMode::exact_tail);
    CHECK(c.p0 == 0.0);
    CHECK(c.p1 == 1.0);

    CHECK_THROWS_AS(flip_error_probs(0, 1, 5, 0), ValidationError);
    CHECK_THROWS_AS(flip_error_probs(10, 11, 5, 0), ValidationError);
    CHECK_THROWS_AS(flip_error_probs(10, 4, 0, 2), ValidationError);
    CHECK_THROWS_AS(flip_error_probs(10, 4, 5, 11), ValidationError);
}

TEST_CASE("tail_of_S: frozen small instance, not clamped at zero") {
    const auto fp = flip_error_probs(100, 10, 5, 4, PbMode::eps_formula, QbMode::exact_tail);
    const auto b = tail_of_S(100, 4, 4, fp);
    CHECK(b.t_prime == 4);
    CHECK(std::exp2(b.log2_tail_s0) == doctest::Approx(0.999980494208).epsilon(1e-9));
    CHECK(std::exp2(b.log2_tail_s1) == doctest::Approx(0.0870772834569).epsilon(1e-9));
    CHECK(b.log2_bound == doctest::Approx(0.1204286224).epsilon(1e-7));
    CHECK(b.log2_bound > 0);  // a vacuous bound is reported as computed
    CHECK(b.assumptions_used == std::vector<std::string>{"A1"});
    CHECK(!b.alpha.has_value());
    CHECK_THROWS_AS(tail_of_S(100, 4, 0, fp), ValidationError);
    CHECK_THROWS_AS(tail_of_S(100, 101, 4, fp), ValidationError);
}

TEST_CASE("tail_of_S: t' = 1 union-bound sandwich and monotonicity") {
    const auto fp = flip_error_probs(100, 10, 5, 4, PbMode::eps_formula, QbMode::exact_tail);
    const double q0 = std::exp(fp.log_q0), q1 = std::exp(fp.log_q1);
    const auto b1 = tail_of_S(100, 4, 1, fp);
    const double exact_any =
        std::log2(1.0 - std::pow(1 - q0, 96) * std::pow(1 - q1, 4));
    const double union_bound = std::log2(96 * q0 + 4 * q1);
    CHECK(b1.log2_bound >= exact_any - 1e-12);
    CHECK(b1.log2_bound <= union_bound + 1e-12);

    double prev = kInf;
    for (std::uint32_t tp = 1; tp <= 8; ++tp) {
        const double cur = tail_of_S(100, 4, tp, fp).log2_bound;
        CHECK(cur <= prev + 1e-12);
        prev = cur;
    }
}

TEST_CASE("theorem_exponent: frozen dominant terms") {
    const auto iii = theorem_exponent(20854, 45, 90, 84, 42);
    CHECK(iii.dominant_nats == doctest::Approx(-74.083068).epsilon(1e-6));
    CHECK(iii.dominant_bits == doctest::Approx(-106.8793).epsilon(1e-5));
    CHECK(std::abs(iii.dominant_bits - iii.dominant_bits_extended) < 0.01);
    CHECK(iii.prefactor_nats == doctest::Approx(-0.5 * std::log(42.0)).epsilon(1e-14));
    CHECK(iii.remainder_nats == doctest::Approx(42 * kLn2).epsilon(1e-12));
    CHECK(iii.eps_value == doctest::Approx(std::exp(-2.0 * 90 * 84 / 20854)).epsilon(1e-14));

    const auto iv = theorem_exponent(18982, 45, 90, 84, 63);
    CHECK(iv.dominant_nats == doctest::Approx(-83.501240).epsilon(1e-6));
    CHECK(iv.dominant_bits == doctest::Approx(-120.4668).epsilon(1e-5));

    const auto ii = theorem_exponent(35078, 55, 110, 84, 4);
    CHECK(ii.dominant_bits == doctest::Approx(-26.4696).epsilon(1e-4));

    const auto empty = theorem_exponent(1000, 10, 20, 5, 0);
    CHECK(empty.dominant_nats == 0);
    CHECK(empty.eps_value == doctest::Approx(std::exp(-0.2)).epsilon(1e-14));

    CHECK(theorem_exponent(1000, 10, 20, 0, 4).remainder_nats == kInf);
    CHECK_THROWS_AS(theorem_exponent(1000, 0, 20, 5, 4), ValidationError);
    CHECK_THROWS_AS(theorem_exponent(10, 5, 11, 5, 4), ValidationError);
}

TEST_CASE("krawtchouk_ratio_check: closed form, residual decay, guards") {
    const auto c3 = krawtchouk_ratio_check(1000, 50, 5);
    CHECK(c3.closed_form == doctest::Approx(0.8881056776).epsilon(1e-9));
    CHECK(c3.rows.size() == 5);
    CHECK(c3.max_residual < 0.02);
    CHECK(c3.max_residual > 1e-3);
    for (std::size_t i = 0; i < c3.rows.size(); ++i) {
        CHECK(c3.rows[i].x == i + 1);
        CHECK(c3.rows[i].residual <= c3.max_residual);
        CHECK(c3.rows[i].ratio > 0);
    }

    const auto c4 = krawtchouk_ratio_check(10000, 50, 5);
    CHECK(c4.closed_form == doctest::Approx(0.9898984693).epsilon(1e-9));
    CHECK(c4.max_residual < 1e-3);
    // residual falls much faster than 1/n when w is held fixed
    CHECK(c4.max_residual * 50 < c3.max_residual);

    CHECK_THROWS_AS(krawtchouk_ratio_check(100, 30, 1), RegimeViolation);
    CHECK_THROWS_AS(krawtchouk_ratio_check(1000, 50, 300), RegimeViolation);
    CHECK_THROWS_AS(krawtchouk_ratio_check(1000, 50, 0), ValidationError);
    CHECK_THROWS_AS(krawtchouk_ratio_check(1000, 0, 5), ValidationError);
}

TEST_CASE("scenario_dfr: scenario I integer certificate") {
    ScenarioParams p;
    p.n = 4100014;
    p.w = 4034;
    p.t = 84;
    p.s = 12;
    p.target_log2 = -80.0;
    const auto res = scenario_dfr(p, Scenario::I);
    CHECK(res.v == 2017);
    REQUIRE(res.radius.has_value());
    CHECK(*res.radius == 84);
    CHECK(res.certified_zero_error);
    CHECK(!res.bound.has_value());
    CHECK(res.variants.empty());
    REQUIRE(res.meets_target.has_value());
    CHECK(*res.meets_target);
    CHECK(res.note.empty());

    p.t = 85;
    const auto miss = scenario_dfr(p, Scenario::I);
    CHECK(!miss.certified_zero_error);
    CHECK(!miss.note.empty());
}

TEST_CASE("scenario_dfr: scenario II frozen chain and flagged shortfall") {
    ScenarioParams p;
    p.n = 35078;
    p.w = 110;
    p.t = 84;
    p.s = 9;
    p.p_mode = PbMode::eps_formula;
    p.target_log2 = -80.0;
    const auto res = scenario_dfr(p, Scenario::II);
    CHECK(*res.radius == 3);
    CHECK(!res.certified_zero_error);
    REQUIRE(res.bound.has_value());
    CHECK(res.bound->t_prime == 4);
    CHECK(res.bound->log2_bound == doctest::Approx(-12.50383989).epsilon(1e-7));
    CHECK(res.bound->log2_tail_s0 == doctest::Approx(-12.50384821).epsilon(1e-7));
    CHECK(res.bound->log2_tail_s1 == doctest::Approx(-29.90818787).epsilon(1e-7));
    CHECK(res.bound->assumptions_used == std::vector<std::string>{"A1"});

    REQUIRE(res.meets_target.has_value());
    CHECK(!*res.meets_target);
    CHECK(res.note.find("not adjusted") != std::string::npos);

    REQUIRE(res.variants.size() == 4);
    CHECK(res.variants[0].first == "tail_exact_p_conditional");
    CHECK(res.variants[1].first == "tail_exact_p_eps");
    CHECK(res.variants[2].first == "tail_surrogate_qb");
    CHECK(res.variants[3].first == "theorem_dominant");
    CHECK(res.variants[1].second == doctest::Approx(-12.50383989).epsilon(1e-7));
    CHECK(res.variants[3].second == doctest::Approx(-26.4696).epsilon(1e-4));

    // a radius certificate short-circuits the chain
    ScenarioParams cert;
    cert.n = 1000;
    cert.w = 10;
    cert.t = 2;
    cert.s = 1;
    const auto easy = scenario_dfr(cert, Scenario::II);
    CHECK(easy.certified_zero_error);
    CHECK(!easy.bound.has_value());
}

TEST_CASE("scenario_dfr: scenario III and IV frozen chains") {
    ScenarioParams p;
    p.n = 20854;
    p.w = 90;
    p.t = 84;
    const auto iii = scenario_dfr(p, Scenario::III);
    CHECK(iii.v == 45);
    REQUIRE(iii.bound.has_value());
    CHECK(iii.bound->t_prime == 42);
    CHECK(iii.bound->log2_bound == doctest::Approx(-24.02423168).epsilon(1e-7));
    REQUIRE(iii.bound->alpha.has_value());
    CHECK(*iii.bound->alpha == 0.5);
    CHECK(iii.bound->assumptions_used ==
          std::vector<std::string>{"A1", "A2(alpha=0.5)"});
    auto variant = [&](const ScenarioResult& r, const std::string& name) {
        for (const auto& [k, val] : r.variants)
            if (k == name) return val;
        FAIL("missing variant ", name);
        return 0.0;
    };
    CHECK(variant(iii, "tail_exact_p_eps") == doctest::Approx(-23.30538476).epsilon(1e-7));
    CHECK(variant(iii, "tail_exact_p_conditional") ==
          doctest::Approx(-24.02423168).epsilon(1e-7));
    CHECK(variant(iii, "theorem_dominant") == doctest::Approx(-106.8793).epsilon(1e-5));

    ScenarioParams q;
    q.n = 18982;
    q.w = 90;
    q.t = 84;
    const auto iv = scenario_dfr(q, Scenario::IV);
    CHECK(iv.bound->t_prime == 63);
    CHECK(iv.bound->log2_bound == doctest::Approx(-19.54836848).epsilon(1e-7));
    CHECK(variant(iv, "tail_exact_p_eps") == doctest::Approx(-18.9625002).epsilon(1e-7));
    CHECK(variant(iv, "theorem_dominant") == doctest::Approx(-120.4668).epsilon(1e-5));
    CHECK(iv.bound->assumptions_used ==
          std::vector<std::string>{"A1", "A2(alpha=0.75)"});

    // alpha = 1 keeps the full error weight
    q.alpha = 1.0;
    CHECK(scenario_dfr(q, Scenario::IV).bound->t_prime == 84);
    // t = 0 contracts to nothing: zero-error certificate
    q.alpha.reset();
    q.t = 0;
    CHECK(scenario_dfr(q, Scenario::IV).certified_zero_error);
}

TEST_CASE("scenario_dfr: validation") {
    ScenarioParams p;
    p.n = 1000;
    p.w = 10;
    p.t = 5;
    CHECK_THROWS_AS(scenario_dfr(p, Scenario::I), ValidationError);   // s missing
    CHECK_THROWS_AS(scenario_dfr(p, Scenario::II), ValidationError);  // s missing
    ScenarioParams odd;
    odd.n = 1000;
    odd.w = 9;
    odd.t = 5;
    CHECK_THROWS_AS(scenario_dfr(odd, Scenario::III), ValidationError);  // v defaulting needs even w
    odd.v = 4;
    CHECK_NOTHROW(scenario_dfr(odd, Scenario::III));
    ScenarioParams bad_alpha;
    bad_alpha.n = 1000;
    bad_alpha.w = 10;
    bad_alpha.t = 5;
    bad_alpha.alpha = 1.5;
    CHECK_THROWS_AS(scenario_dfr(bad_alpha, Scenario::III), ValidationError);
    bad_alpha.alpha = 0.0;
    CHECK_THROWS_AS(scenario_dfr(bad_alpha, Scenario::III), ValidationError);
    ScenarioParams huge_t;
    huge_t.n = 100;
    huge_t.w = 10;
    huge_t.t = 101;
    CHECK_THROWS_AS(scenario_dfr(huge_t, Scenario::III), ValidationError);

    CHECK(scenario_from_string("III") == Scenario::III);
    CHECK(to_string(scenario_from_string("II")) == "II");
    CHECK_THROWS_AS(scenario_from_string("V"), ValidationError);
}

TEST_CASE("logprob helpers") {
    CHECK(log_binom(10, 3) == doctest::Approx(std::log(120.0)).epsilon(1e-14));
    CHECK(log_binom(10, 0) == doctest::Approx(0.0));
    CHECK(log_add(std::log(2.0), std::log(3.0)) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
    CHECK(log_add(kNegInfinity, -1.5) == -1.5);
    CHECK(log_add(kNegInfinity, kNegInfinity) == kNegInfinity);
    CHECK(log1mexp(-kLn2) == doctest::Approx(-kLn2).epsilon(1e-14));
    CHECK(log2_from_nats(kLn2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(log2_from_nats(kNegInfinity) == kNegInfinity);
}

}  // TEST_SUITE
