#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "lmoment/forms.hpp"

namespace lmoment {

using cdouble = std::complex<double>;

enum class LMethod { dirichlet, euler, afe };

struct LValue {
    cdouble s;
    cdouble value;
    LMethod method = LMethod::afe;
    double trunc_error = 0.0;
};

// Partial sum of lambda(n)/n^s for n <= n_max; requires Re s > 1.
// trunc_error is the divisor-bound tail sum_{n>n_max} d(n)/n^sigma,
// bounded by integral comparison.
LValue dirichlet_partial(const Eigenform& f, cdouble s, std::size_t n_max);

// log L(s,f) truncated to primes p <= p_max, via the power sums
// alpha_p^l + beta_p^l of each local factor; requires Re s > 1.
cdouble euler_product_log(const Eigenform& f, cdouble s, std::uint64_t p_max);

struct CompletedValue {
    cdouble s;
    cdouble lambda_value;
};

// (sqrt(N)/2pi)^s Gamma(s + (kappa-1)/2) L(s,f).
CompletedValue completed_lambda(const Eigenform& f, cdouble s);

// Smoothed two-sided series for L(s,f), valid for any s away from the
// Gamma poles.  The cutoff V comes from a vertical-line integral of the
// Gamma-factor ratio against exp(a w^2)/w on Re w = c, evaluated by
// trapezoidal quadrature (the integrand is entire, so the rule converges
// spectrally in the step).
struct AfeOptions {
    double gauss_a = 0.02;       // cutoff exp(a w^2)
    double step = 0.125;         // quadrature step in Im w
    double terms_scale = 50.0;   // series length ceil(scale * sqrt(N) * (1+|t|))
    double tail_shift = 6.0;     // extra contour shift for the tail estimate
};

LValue afe_value(const Eigenform& f, cdouble s, const AfeOptions& opt = {});

// L(1/2 + it, f) by the smoothed series; |t| <= 10^4, and the form must
// carry at least ceil(50 sqrt(N) (1+|t|)) coefficients.
LValue central_value(const Eigenform& f, double t, const AfeOptions& opt = {});

std::size_t afe_required_terms(std::uint64_t level, double t, double scale = 50.0);

// Caches the quadrature tables keyed by (level, weight, s) so a family at a
// common level and weight shares the per-shift setup.  prepare() fills the
// cache; evaluations afterwards are read-only and safe to run in parallel.
class AfeEvaluator {
public:
    explicit AfeEvaluator(AfeOptions opt = {}) : opt_(opt) {}

    void prepare(const Eigenform& f, cdouble s);
    LValue value(const Eigenform& f, cdouble s) const;

private:
    struct Table;
    AfeOptions opt_;
    std::map<std::tuple<std::uint64_t, unsigned, double, double>, std::shared_ptr<const Table>> cache_;

    std::shared_ptr<const Table> table_for(const Eigenform& f, cdouble s) const;
};

} // namespace lmoment
