#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>

namespace mdpc {

// Krawtchouk polynomial P_k^n evaluated at integer x via the defining sum
//
//   P_k^n(x) = (-1)^k / 2^k * sum_j (-1)^j C(x, j) C(n-x, k-j),
//
// computed exactly over big rationals. Requires 0 <= k <= n and 0 <= x <= n.
mpq_class krawtchouk(std::uint32_t n, std::uint32_t k, std::uint32_t x);

// Bias delta = 1 - 2*P(<h, e> = 1) for a uniform weight-w word h and a fixed
// weight-t error e of length n. Two independent exact routes:
//   via Krawtchouk:      delta = (-2)^w / C(n, w) * P_w^n(t)
//   via hypergeometric:  delta = 1 - 2 * sum_{j odd} C(t, j) C(n-t, w-j) / C(n, w)
mpq_class bias_via_krawtchouk(std::uint32_t n, std::uint32_t w, std::uint32_t t);
mpq_class bias_via_hypergeometric(std::uint32_t n, std::uint32_t w, std::uint32_t t);

// Floating-point bias through the odd-j hypergeometric sum in log-gamma form
// (all terms positive, Kahan-compensated). For n far beyond exact-rational
// reach.
double bias_float(std::uint32_t n, std::uint32_t w, std::uint32_t t);

// e^(-2wt/n), the piling-up style approximation of delta.
double eps(std::uint32_t n, std::uint32_t w, std::uint32_t t);

struct Bias {
    double delta = 0;
    // Present when the exact rational route ran (n <= exact threshold).
    std::optional<mpq_class> delta_exact;
    double eps_approx = 0;
    std::uint32_t n = 0, w = 0, t = 0;
};

// Routes automatically: exact rationals up to n = 10000 (both routes computed
// and cross-checked), the log-gamma float path above. Requires 1 <= w <= n,
// t <= n.
Bias exact_bias(std::uint32_t n, std::uint32_t w, std::uint32_t t);

}  // namespace mdpc
