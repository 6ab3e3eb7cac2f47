#pragma once

#include <cmath>
#include <cstdint>

namespace lmoment::detail {

// Upper bound for sum_{n > M} d(n) n^{-s}, s > 1, from D(u) <= u(log u + 1)
// and partial summation:
//   tail <= s * [ M^{1-s} log M / (s-1) + M^{1-s} / (s-1)^2 + M^{1-s} / (s-1) ].
inline double divisor_tail_bound(double s, double M) {
    if (s <= 1.0 || M < 1.0) return 1e308;
    const double m1 = std::pow(M, 1.0 - s);
    const double sm1 = s - 1.0;
    return s * m1 * (std::log(M) / sm1 + 1.0 / (sm1 * sm1) + 1.0 / sm1);
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) { const std::uint64_t t = a % b; a = b; b = t; }
    return a;
}

} // namespace lmoment::detail
