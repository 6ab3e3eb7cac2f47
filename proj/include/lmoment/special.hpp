#pragma once

#include <complex>
#include <cstdint>

namespace lmoment {

struct KloostermanValue {
    std::int64_t m = 0;
    std::int64_t n = 0;
    std::uint64_t c = 1;
    double value = 0.0;          // the sum is real by the u <-> -u symmetry
    double imag_residual = 0.0;  // |imaginary part| of the raw complex sum
};

// S(m,n,c) = sum over units u mod c of e((m*u + n*u^-1)/c), evaluated by
// direct enumeration with inverses from the extended Euclidean algorithm.
// c is capped at 10^7 per call.
KloostermanValue kloosterman(std::int64_t m, std::int64_t n, std::uint64_t c);

// J-Bessel function of integer order.  order <= 200, x in [0, 10^6].
// Power series for small x, Miller downward recurrence in the mid range,
// Hankel asymptotics for large x.
double bessel_j(unsigned order, double x);

// Individual evaluation routes, exposed for cross-validation.
double bessel_j_series(unsigned order, double x);
double bessel_j_recurrence(unsigned order, double x);
double bessel_j_asymptotic(unsigned order, double x);

// Partial exponential sum with ceil(ell)+1 terms, nested (Horner) form.
// ceil(ell) is capped at 10^4.
std::complex<double> truncated_exp(double ell, std::complex<double> z);

// Principal-branch log Gamma.  Stirling with argument shift for Re z >= 1/2,
// reflection otherwise; poles at nonpositive integers raise a domain error.
std::complex<double> log_gamma(std::complex<double> z);

} // namespace lmoment
