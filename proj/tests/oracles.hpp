// Independent reference implementations used to pin expected values.
// Everything here is deliberately naive and shares no code with the library
// paths it checks.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

inline std::vector<std::uint64_t> trial_division_primes(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        bool prime = true;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) { prime = false; break; }
        if (prime) out.push_back(n);
    }
    return out;
}

inline std::int64_t divisor_count_naive(std::uint64_t n) {
    std::int64_t c = 0;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) ++c;
    return c;
}

inline std::int64_t euler_phi_naive(std::uint64_t n) {
    auto gcd = [](std::uint64_t a, std::uint64_t b) {
        while (b) { const auto t = a % b; a = b; b = t; }
        return a;
    };
    std::int64_t c = 0;
    for (std::uint64_t k = 1; k <= n; ++k)
        if (gcd(k, n) == 1) ++c;
    return c;
}

inline std::int64_t mobius_naive(std::uint64_t n) {
    int factors = 0;
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        ++factors;
    }
    return factors % 2 == 0 ? 1 : -1;
}

// Coefficients of prod_{m=1}^{count} (1 - q^m)^power up to q^(count-1),
// by repeated dense multiplication with each binomial factor.
template <class Int>
std::vector<Int> eta_power_coeffs(unsigned power, std::size_t count) {
    std::vector<Int> c(count, Int(0));
    c[0] = 1;
    for (unsigned rep = 0; rep < power; ++rep)
        for (std::size_t m = 1; m < count; ++m)
            for (std::size_t j = count; j-- > m;)
                c[j] -= c[j - m];
    return c;
}

// Coefficients of prod (1-q^m)^2 (1-q^(11m))^2 up to q^(count-1).
inline std::vector<std::int64_t> eta11_squared_coeffs(std::size_t count) {
    std::vector<std::int64_t> c = eta_power_coeffs<std::int64_t>(2, count);
    for (unsigned rep = 0; rep < 2; ++rep)
        for (std::size_t m = 11; m < count; m += 11)
            for (std::size_t j = count; j-- > m;)
                c[j] -= c[j - m];
    return c;
}

// a(n) of the weight-kappa level-1 eigenform as Delta * E_{kappa-12}, all in
// __int128 (valid for the small n used in tests).
inline std::vector<__int128> level1_coeffs_naive(unsigned kappa, std::size_t n_top) {
    const std::size_t count = n_top;  // powers of q: 0..n_top-1 for the eta part
    const auto eta24 = eta_power_coeffs<__int128>(24, count);
    if (kappa == 12) {
        std::vector<__int128> a(n_top + 1, 0);
        for (std::size_t n = 1; n <= n_top; ++n) a[n] = eta24[n - 1];
        return a;
    }
    const unsigned k = kappa - 12;
    long ck = 0;
    switch (k) {
        case 4: ck = 240; break;
        case 6: ck = -504; break;
        case 8: ck = 480; break;
        case 10: ck = -264; break;
        case 14: ck = -24; break;
    }
    std::vector<__int128> eis(count, 0);
    eis[0] = 1;
    for (std::size_t j = 1; j < count; ++j) {
        __int128 sigma = 0;
        for (std::size_t d = 1; d <= j; ++d) {
            if (j % d) continue;
            __int128 dp = 1;
            for (unsigned e = 0; e + 1 < k; ++e) dp *= static_cast<__int128>(d);
            sigma += dp;
        }
        eis[j] = ck * sigma;
    }
    std::vector<__int128> a(n_top + 1, 0);
    for (std::size_t n = 1; n <= n_top; ++n) {
        __int128 acc = 0;
        for (std::size_t j = 0; j < n; ++j) acc += eta24[n - 1 - j] * eis[j];
        a[n] = acc;
    }
    return a;
}

inline double to_double(__int128 v) {
    return static_cast<double>(v);
}

// Kloosterman sum with the inverse found by scanning.
inline std::complex<double> kloosterman_naive(std::int64_t m, std::int64_t n, std::uint64_t c) {
    if (c == 1) return 1.0;
    auto gcd = [](std::uint64_t a, std::uint64_t b) {
        while (b) { const auto t = a % b; a = b; b = t; }
        return a;
    };
    const double tau = 2.0 * 3.14159265358979323846;
    std::complex<double> acc = 0.0;
    for (std::uint64_t u = 1; u < c; ++u) {
        if (gcd(u, c) != 1) continue;
        std::uint64_t ubar = 0;
        for (std::uint64_t v = 1; v < c; ++v)
            if ((u * v) % c == 1) { ubar = v; break; }
        const double ang = tau *
            (static_cast<double>(((m % static_cast<std::int64_t>(c) + static_cast<std::int64_t>(c)) %
                                  static_cast<std::int64_t>(c)) * static_cast<std::int64_t>(u) %
                                 static_cast<std::int64_t>(c)) +
             static_cast<double>(((n % static_cast<std::int64_t>(c) + static_cast<std::int64_t>(c)) %
                                  static_cast<std::int64_t>(c)) * static_cast<std::int64_t>(ubar) %
                                 static_cast<std::int64_t>(c))) /
            static_cast<double>(c);
        acc += std::polar(1.0, ang);
    }
    return acc;
}

// Plain power series for J_nu, no scaling tricks.
inline double bessel_series_naive(unsigned nu, double x) {
    long double acc = 0.0L;
    long double term = 1.0L;
    for (unsigned k = 1; k <= nu; ++k) term /= k;  // 1/nu!
    term *= std::pow(static_cast<long double>(x) / 2.0L, static_cast<long double>(nu));
    for (unsigned m = 0; m < 200; ++m) {
        acc += term;
        term *= -(static_cast<long double>(x) * x / 4.0L) /
                ((m + 1.0L) * (m + 1.0L + nu));
    }
    return static_cast<double>(acc);
}

// Truncated exponential by direct factorial sum.
inline std::complex<double> truncated_exp_naive(unsigned terms, std::complex<double> z) {
    std::complex<double> acc = 0.0;
    std::complex<double> t = 1.0;
    for (unsigned j = 0; j <= terms; ++j) {
        acc += t;
        t *= z / static_cast<double>(j + 1);
    }
    return acc;
}

} // namespace oracle
