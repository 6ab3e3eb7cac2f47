#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lmoment {

enum class FormSource { builtin, file };

// A normalized Hecke eigenform given by its coefficient sequence
// lambda(1..n_max) with lambda(1) = 1.  Level is 1 or a prime.  Immutable
// in practice: nothing in the library mutates a form after construction
// except root_number(), which caches the computed sign.
struct Eigenform {
    std::string id;
    std::uint64_t level = 1;
    unsigned weight = 12;
    std::vector<double> lambda;  // lambda[n] for n >= 1; lambda[0] unused
    double eps = 0.0;            // root number; 0 = not yet computed
    FormSource source = FormSource::builtin;

    std::size_t n_max() const { return lambda.empty() ? 0 : lambda.size() - 1; }
    double coeff(std::uint64_t n) const;  // throws std::out_of_range beyond n_max
};

enum class BuiltinId {
    delta12,
    level1_weight16,
    level1_weight18,
    level1_weight20,
    level1_weight22,
    level1_weight26,
    level11_weight2,
};

BuiltinId builtin_id_from_string(const std::string& name);
const std::vector<std::string>& builtin_ids();

// Exact construction from q-expansions: the weight-12 form from the 24th
// power of the Euler product, higher level-1 weights from its product with
// the integral Eisenstein series of weight kappa-12 (constants derived from
// Bernoulli numbers), the level-11 weight-2 form from the squared eta
// product at levels 1 and 11.  All integer arithmetic is exact (GMP);
// normalization by n^{(kappa-1)/2} is the only floating step.
Eigenform builtin_form(BuiltinId id, std::size_t n_max);
Eigenform builtin_form(const std::string& id, std::size_t n_max);

// Serial reference for the generator kernels; bit-identical to builtin_form.
Eigenform builtin_form_serial(BuiltinId id, std::size_t n_max);

// Text format:
//   #meta level=<N> weight=<kappa> count=<n_max> normalized=true
//   <n>,<lambda_n>            for n = 1..n_max in order
void write_coefficients(const Eigenform& f, std::ostream& os);
void write_coefficients_file(const Eigenform& f, const std::string& path);

// Parses and validates: lambda(1) = 1, the divisor bound |lambda(n)| <= d(n),
// and the multiplicative relations up to min(n_max, 10^4) at tolerance 1e-9.
// Violations throw std::runtime_error naming the offending n.
Eigenform load_coefficients(const std::string& path);

// Validation entry point shared by load_coefficients and the test suites.
void validate_form(const Eigenform& f, std::size_t up_to, double tol = 1e-9);

// sum over d | (m,n), (d, level) = 1 of lambda(m*n/d^2).
double hecke_product(const Eigenform& f, std::uint64_t m, std::uint64_t n);

// Binomial-difference expansion of lambda(p)^e in terms of lambda(p^r) with
// r of the same parity as e.  Requires p coprime to the level.
double power_expansion(const Eigenform& f, std::uint64_t p, unsigned e);

// values[l] = alpha_p^l + beta_p^l, from u_0 = 2, u_1 = lambda(p),
// u_l = lambda(p) u_{l-1} - chi0(p) u_{l-2} where chi0(p) = 0 iff p | level.
struct PrimeFrame {
    std::uint64_t p = 2;
    std::vector<double> values;
};
PrimeFrame prime_frame(const Eigenform& f, std::uint64_t p, unsigned max_power);

// eps = i^kappa mu(N) lambda(N) sqrt(N), rounded to +-1; caches on the form.
// A computed magnitude further than 1e-3 from 1 raises a data error.
double root_number(Eigenform& f);
double root_number(const Eigenform& f);

// The unrounded product, for checking how close the data lands to +-1.
double root_number_raw(const Eigenform& f);

// Deterministic synthetic coefficient sequence for fixtures: multiplicative,
// lambda(p) = 2 cos(theta_p) with seeded random angles, prime-power values
// from the Chebyshev recurrence, lambda(level) = +-level^{-1/2}.
Eigenform synthetic_form(std::uint64_t level, unsigned weight, std::size_t n_max,
                         std::uint64_t seed, const std::string& id);

} // namespace lmoment
