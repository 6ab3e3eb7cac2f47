#pragma once

#include <cstdint>
#include <vector>

#include "lmoment/forms.hpp"

namespace lmoment {

// Explicit main term plus Kloosterman-Bessel tail of the averaged Fourier
// coefficient over a weight-kappa level-N family.
struct PeterssonTerm {
    unsigned kappa = 2;
    std::uint64_t N = 1;
    std::uint64_t n = 1;
    double Y = 1.0;
    std::uint64_t c_max = 1;
    double main_term = 0.0;           // (kappa-1)N/(12 sqrt(n)) iff n = m^2, m <= Y
    double kloosterman_tail = 0.0;
    double truncation_estimate = 0.0; // bound on the dropped c > c_max part
};

// sum over the family of lambda_f(n), in family order.  All forms must share
// level and weight.
double family_eigenvalue_sum(const std::vector<Eigenform>& family, std::uint64_t n);

// The explicit average: main term per the square indicator, tail
//   (kappa-1)N/12 * sum_{(m,N)=1, m<=Y} (2 pi i^kappa / m)
//     * sum_{c = 0 mod N, N <= c <= c_max} S(m^2,n;c)/c * J_{kappa-1}(4 pi sqrt(m^2 n)/c)
// with i^kappa = (-1)^{kappa/2}.  The dropped c > c_max tail is bounded using
// |J_{kappa-1}(x)| <= (x/2)^{kappa-1}/Gamma(kappa) together with the
// divisor-times-sqrt Kloosterman bound, which keeps the estimate finite for
// kappa = 2.  Requires (n, N^2) | N and c_max >= N.
PeterssonTerm petersson_average(unsigned kappa, std::uint64_t N, std::uint64_t n,
                                double Y, std::uint64_t c_max);

// Serial reference for the tail sum; the public routine evaluates the
// (m, c) grid in parallel slots and reduces in ascending order.
PeterssonTerm petersson_average_serial(unsigned kappa, std::uint64_t N, std::uint64_t n,
                                       double Y, std::uint64_t c_max);

// Empirical family sum minus the explicit average; kappa and N are passed
// explicitly so the empty family degenerates to minus the average.
double petersson_residual(unsigned kappa, std::uint64_t N,
                          const std::vector<Eigenform>& family, std::uint64_t n,
                          double Y, std::uint64_t c_max);

struct FamilySizeModel {
    double model = 0.0;  // (kappa-1) N / 12
    double band = 0.0;   // (kappa N)^(5/6)
};

// Size model for the full family (both root-number classes); N > 1.
FamilySizeModel family_size_model(unsigned kappa, std::uint64_t N);

// Default truncation 100 * N * ceil(sqrt(n)) * Y.
std::uint64_t default_c_max(std::uint64_t N, std::uint64_t n, double Y);

} // namespace lmoment
