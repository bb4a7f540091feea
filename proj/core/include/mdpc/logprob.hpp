#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace mdpc {

inline constexpr double kNegInfinity = -std::numeric_limits<double>::infinity();
inline constexpr double kLn2 = 0.6931471805599453;

// ln C(n, k). Good to a few ulp of the log, which is all the tail summations
// need (they compare against 1e-9 relative).
inline double log_binom(double n, double k) {
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

// ln(e^a + e^b), safe at -inf.
inline double log_add(double a, double b) {
    if (a == kNegInfinity) return b;
    if (b == kNegInfinity) return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

// ln(1 - e^x) for x <= 0; x == 0 gives -inf.
inline double log1mexp(double x) {
    if (x >= 0) return x == 0 ? kNegInfinity : std::numeric_limits<double>::quiet_NaN();
    return x > -kLn2 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

inline double log2_from_nats(double nats) { return nats / kLn2; }

}  // namespace mdpc
