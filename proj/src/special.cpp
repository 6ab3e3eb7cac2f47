#include "lmoment/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace lmoment {

namespace {

constexpr double kPi = std::numbers::pi;

// Inverse of a mod c via extended gcd; a must be a unit.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t c) {
    std::int64_t old_r = static_cast<std::int64_t>(a), r = static_cast<std::int64_t>(c);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r; r = tmp;
        tmp = old_s - q * s;
        old_s = s; s = tmp;
    }
    std::int64_t inv = old_s % static_cast<std::int64_t>(c);
    if (inv < 0) inv += static_cast<std::int64_t>(c);
    return static_cast<std::uint64_t>(inv);
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) { const std::uint64_t t = a % b; a = b; b = t; }
    return a;
}

} // namespace

KloostermanValue kloosterman(std::int64_t m, std::int64_t n, std::uint64_t c) {
    if (c < 1) throw std::domain_error("kloosterman: c must be >= 1");
    if (c > 10000000) throw std::domain_error("kloosterman: c capped at 10^7");

    KloostermanValue out;
    out.m = m;
    out.n = n;
    out.c = c;
    if (c == 1) {  // single residue, e(0) = 1
        out.value = 1.0;
        return out;
    }

    const auto ci = static_cast<std::int64_t>(c);
    std::int64_t mr = m % ci; if (mr < 0) mr += ci;
    std::int64_t nr = n % ci; if (nr < 0) nr += ci;

    double re = 0.0, im = 0.0;
    const double w = 2.0 * kPi / static_cast<double>(c);
    for (std::uint64_t u = 1; u < c; ++u) {
        if (gcd_u64(u, c) != 1) continue;
        const std::uint64_t ubar = mod_inverse(u, c);
        const std::uint64_t phase =
            (static_cast<std::uint64_t>(mr) * u + static_cast<std::uint64_t>(nr) * ubar) % c;
        const double ang = w * static_cast<double>(phase);
        re += std::cos(ang);
        im += std::sin(ang);
    }
    out.value = re;
    out.imag_residual = std::abs(im);
    return out;
}

double bessel_j_series(unsigned order, double x) {
    // Alternating series in long double; reliable while cancellation stays
    // below ~4 digits, i.e. x not much larger than the order.
    const long double half = static_cast<long double>(x) / 2.0L;
    const long double q = half * half;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (unsigned k = 1; k < 40000; ++k) {
        term *= -q / (static_cast<long double>(k) * (static_cast<long double>(k) + order));
        sum += term;
        if (std::abs(term) < 1e-22L * std::abs(sum) + 1e-330L) break;
    }
    // Prefactor (x/2)^order / order! in log space to dodge under/overflow.
    long double lg = 0.0L;
    if (order > 0) {
        if (x == 0.0) return 0.0;
        lg = order * std::log(half) - std::lgamma(static_cast<long double>(order) + 1.0L);
    }
    if (lg < -745.0L) return 0.0;
    return static_cast<double>(sum * std::exp(lg));
}

double bessel_j_recurrence(unsigned order, double x) {
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    // Miller's algorithm: downward recurrence from well above both the order
    // and the turning point, normalized by J_0 + 2 J_2 + 2 J_4 + ... = 1.
    const unsigned start = static_cast<unsigned>(
        std::max<double>(order, x) + 14.0 * std::cbrt(x) + 60.0);
    const unsigned m = (start % 2 == 0) ? start : start + 1;

    double fp1 = 0.0;   // f_{k+1}
    double f = 1e-300;  // f_k (arbitrary small seed)
    double norm = 0.0;
    double target = 0.0;
    for (unsigned k = m; k-- > 0;) {
        const double fm1 = (2.0 * (k + 1) / x) * f - fp1;
        fp1 = f;
        f = fm1;
        if (k % 2 == 0) norm += (k == 0 ? 1.0 : 2.0) * f;
        if (k == order) target = f;
        if (std::abs(f) > 1e280) {  // rescale to avoid overflow
            f *= 1e-280;
            fp1 *= 1e-280;
            norm *= 1e-280;
            target *= 1e-280;
        }
    }
    if (order == 0) target = f;
    return target / norm;
}

double bessel_j_asymptotic(unsigned order, double x) {
    // Hankel expansion J_nu(x) ~ sqrt(2/(pi x)) (P cos w - Q sin w),
    // w = x - nu pi/2 - pi/4.
    const double mu = 4.0 * static_cast<double>(order) * order;
    const double w = x - (static_cast<double>(order) * 0.5 + 0.25) * kPi;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    for (unsigned k = 1; k <= 30; ++k) {
        const double f = (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * x * k);
        const double next = term * f;
        if (std::abs(next) >= std::abs(term)) break;  // past optimal truncation
        term = next;
        if (k % 4 == 1) q += term;
        else if (k % 4 == 2) p -= term;
        else if (k % 4 == 3) q -= term;
        else p += term;
        if (std::abs(term) < 1e-17) break;
    }
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(w) - q * std::sin(w));
}

double bessel_j(unsigned order, double x) {
    if (order > 200) throw std::domain_error("bessel_j: order capped at 200");
    if (x < 0.0 || x > 1e6) throw std::domain_error("bessel_j: x must be in [0, 10^6]");
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;

    const double nu = order;
    if (x <= nu + 10.0 && order <= 60) return bessel_j_series(order, x);
    if (x >= std::max(1000.0, 2.0 * nu * nu)) return bessel_j_asymptotic(order, x);
    return bessel_j_recurrence(order, x);
}

std::complex<double> truncated_exp(double ell, std::complex<double> z) {
    if (ell < 0.0) throw std::domain_error("truncated_exp: ell must be >= 0");
    const double ceiled = std::ceil(ell);
    if (ceiled > 10000.0) throw std::domain_error("truncated_exp: ceil(ell) capped at 10^4");
    const unsigned terms = static_cast<unsigned>(ceiled);

    std::complex<double> acc = 1.0;
    for (unsigned j = terms; j >= 1; --j) acc = 1.0 + z / static_cast<double>(j) * acc;
    return acc;
}

std::complex<double> log_gamma(std::complex<double> z) {
    const bool near_real = std::abs(z.imag()) < 1e-12;
    if (near_real && z.real() <= 0.0 && std::abs(z.real() - std::round(z.real())) < 1e-12)
        throw std::domain_error("log_gamma: pole at nonpositive integer");

    if (z.real() < 0.5) {
        // Reflection; principal branch is only guaranteed near the real axis,
        // which is where the completed-function evaluations use it.
        const std::complex<double> s = std::sin(kPi * z);
        return std::log(kPi) - std::log(s) - log_gamma(1.0 - z);
    }

    // Shift until Stirling with seven Bernoulli terms reaches ~1e-14.
    std::complex<double> shift = 0.0;
    while (z.real() < 16.0) {
        shift -= std::log(z);
        z += 1.0;
    }
    static const double bern[] = {
        1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
        1.0 / 1188.0, -691.0 / 360360.0, 7.0 / 1156.0,
    };
    const std::complex<double> z2 = z * z;
    std::complex<double> series = 0.0;
    std::complex<double> pow = 1.0 / z;
    for (double b : bern) {
        series += b * pow;
        pow /= z2;
    }
    const std::complex<double> base =
        (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi);
    return base + series + shift;
}

} // namespace lmoment
