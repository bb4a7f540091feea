#include "mdpc/krawtchouk.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "mdpc/errors.hpp"
#include "mdpc/logprob.hpp"

namespace mdpc {

namespace {

constexpr std::uint32_t kExactBiasMaxN = 10000;

mpz_class binom(std::uint32_t n, std::uint32_t k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

}  // namespace

mpq_class krawtchouk(std::uint32_t n, std::uint32_t k, std::uint32_t x) {
    if (k > n) throw ValidationError("krawtchouk: degree k exceeds n");
    if (x > n) throw ValidationError("krawtchouk: point x exceeds n");

    mpz_class sum = 0;
    for (std::uint32_t j = 0; j <= k; ++j) {
        mpz_class term = binom(x, j) * binom(n - x, k - j);
        if (j & 1)
            sum -= term;
        else
            sum += term;
    }
    if (k & 1) sum = -sum;

    mpz_class pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, k);
    mpq_class result(sum);
    result /= mpq_class(pow2);
    return result;
}

mpq_class bias_via_krawtchouk(std::uint32_t n, std::uint32_t w, std::uint32_t t) {
    if (w == 0 || w > n) throw ValidationError("bias: need 1 <= w <= n");
    if (t > n) throw ValidationError("bias: t exceeds n");

    mpz_class pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, w);
    if (w & 1) pow2 = -pow2;

    mpq_class result(pow2);
    result *= krawtchouk(n, w, t);
    result /= mpq_class(binom(n, w));
    return result;
}

mpq_class bias_via_hypergeometric(std::uint32_t n, std::uint32_t w, std::uint32_t t) {
    if (w == 0 || w > n) throw ValidationError("bias: need 1 <= w <= n");
    if (t > n) throw ValidationError("bias: t exceeds n");

    mpz_class odd_sum = 0;
    for (std::uint32_t j = 1; j <= w && j <= t; j += 2) {
        if (w - j > n - t) continue;
        odd_sum += binom(t, j) * binom(n - t, w - j);
    }
    mpq_class p_odd(odd_sum);
    p_odd /= mpq_class(binom(n, w));
    return 1 - 2 * p_odd;
}

double bias_float(std::uint32_t n, std::uint32_t w, std::uint32_t t) {
    if (w == 0 || w > n) throw ValidationError("bias: need 1 <= w <= n");
    if (t > n) throw ValidationError("bias: t exceeds n");

    // log-domain terms of the odd-j sum, normalized by the largest
    std::vector<double> logs;
    logs.reserve(w / 2 + 1);
    const double log_cnw = log_binom(n, w);
    double max_log = kNegInfinity;
    for (std::uint32_t j = 1; j <= w && j <= t; j += 2) {
        if (w - j > n - t) continue;
        const double lt = log_binom(t, j) + log_binom(n - t, w - j) - log_cnw;
        logs.push_back(lt);
        max_log = std::max(max_log, lt);
    }
    if (logs.empty()) return 1.0;

    double sum = 0, comp = 0;
    for (double lt : logs) {
        const double term = std::exp(lt - max_log);
        const double y = term - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    const double p_odd = std::exp(max_log) * sum;
    return 1.0 - 2.0 * p_odd;
}

double eps(std::uint32_t n, std::uint32_t w, std::uint32_t t) {
    if (n == 0) throw ValidationError("eps: n must be positive");
    return std::exp(-2.0 * static_cast<double>(w) * static_cast<double>(t) /
                    static_cast<double>(n));
}

Bias exact_bias(std::uint32_t n, std::uint32_t w, std::uint32_t t) {
    Bias bias;
    bias.n = n;
    bias.w = w;
    bias.t = t;
    bias.eps_approx = eps(n, w, t);
    if (n <= kExactBiasMaxN) {
        mpq_class via_k = bias_via_krawtchouk(n, w, t);
        mpq_class via_h = bias_via_hypergeometric(n, w, t);
        if (via_k != via_h)
            throw Error("exact_bias: Krawtchouk and hypergeometric routes disagree");
        bias.delta = via_k.get_d();
        bias.delta_exact = std::move(via_k);
    } else {
        bias.delta = bias_float(n, w, t);
    }
    return bias;
}

}  // namespace mdpc
