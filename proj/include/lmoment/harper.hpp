#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "lmoment/arith.hpp"
#include "lmoment/forms.hpp"
#include "lmoment/lfun.hpp"

namespace lmoment {

// Shift data for a k-fold moment: exponents a_j > 0, shifts t_j with
// |t_j| <= N^A.
struct ShiftSpec {
    std::vector<double> a;
    std::vector<double> t;
    double A = 1.0;

    std::size_t k() const { return a.size(); }
    double a_total() const;
    void validate(std::uint64_t N) const;  // throws on mismatched lengths etc.
};

// The alpha ladder and derived quantities for a family-size parameter N.
//   alpha_0 = log 2 / log N,   alpha_i = 20^{i-1} / (log log N)^2  (i >= 1),
//   J = 1 + max{ i : alpha_i <= 10^{-T} }  (clamped to >= 1).
// N below 100 is rejected (log log N degenerates).
struct HarperConfig {
    std::uint64_t N = 0;
    double T = 1.0;
    std::vector<double> alphas;   // alphas[i], i = 0..J+1
    unsigned J = 1;
    double lambda_smooth = 0.0;   // >= lambda0 = 0.4912...
    double slack_C = 5.0;         // stand-in for the unspecified O(1) constants
    std::uint64_t prime_enum_limit = 100000000;  // windows beyond this raise range errors

    static HarperConfig make(std::uint64_t N, double T = 1.0, double slack_C = 5.0);

    double alpha(unsigned i) const;
    std::uint64_t max_dyadic_index() const;  // floor(log log N / log 2)
};

// Unique positive root of exp(-x) = x + x^2/2, solved by Newton iteration.
double lambda0();

// h(n) = (1/2) sum_m a_m n^{-i t_m}.
std::complex<double> shift_weight(const ShiftSpec& spec, std::uint64_t n);

// Conditional upper bound for log |L(sigma+it, f)|:
//   Re sum_{p^l <= x} (alpha_p^l + beta_p^l) / (l p^{l(sigma+it+lambda/log x)})
//        * log(x/p^l)/log x
//   + (1+lambda)(log sqrt(N) + log(|t|+2)) + slack_C (lambda/log x + 1).
// Requires sigma >= 1/2, x >= 2, cfg.lambda_smooth >= lambda0.
double grh_log_bound(const Eigenform& f, double sigma, double t, double x,
                     const HarperConfig& cfg);

// Multi-shift version bounding sum_m a_m log |L(sigma+it_m, f)|:
//   2 Re sum_{p <= x} h(p) lambda(p) / p^{1/2+max(sigma-1/2, 1/log x)} * log(x/p)/log x
//   - Re sum_{p <= min(sqrt(x), log N)} h(p^2)(lambda(p^2)-1)/p
//   + (A+1) a_total log N / log x + slack_C.
// Requires sigma - 1/2 <= 2/log x and x >= 4.
double grh_shifted_log_bound(const Eigenform& f, const ShiftSpec& spec, double sigma,
                             double x, const HarperConfig& cfg);

// Dirichlet polynomial over the prime window (N^{alpha_{i-1}}, N^{alpha_i}]:
//   sum 2 h(p) lambda(p) / p^{1/2 + 1/log(N^{alpha_j})} * log(N^{alpha_j}/p)/log(N^{alpha_j}),
// for 1 <= i <= j <= J.  Windows whose upper end exceeds cfg.prime_enum_limit
// raise a range error.
std::complex<double> window_polynomial(const Eigenform& f, const ShiftSpec& spec,
                                       const HarperConfig& cfg, unsigned i, unsigned j);

// - sum over primes in (2^m, 2^{m+1}] of h(p^2)(lambda(p^2)-1)/p,
// for 0 <= m <= floor(log log N / log 2).
std::complex<double> dyadic_polynomial(const Eigenform& f, const ShiftSpec& spec,
                                       const HarperConfig& cfg, std::uint64_t m);

struct BucketLabel {
    enum class Kind { S, P } kind = Kind::S;
    int index = 0;

    friend bool operator==(const BucketLabel&, const BucketLabel&) = default;
    friend auto operator<=>(const BucketLabel&, const BucketLabel&) = default;
};
std::string to_string(const BucketLabel& label);

struct Classification {
    BucketLabel s_bucket;                  // always present, index in [0, J]
    std::optional<BucketLabel> p_bucket;   // largest failing dyadic index, if any
};

// Window-threshold classification: s-bucket is the smallest j such that all
// windows with i <= j pass |window_polynomial| <= alpha_i^{-3/4} and some
// window at i = j+1 fails, or J when every window passes; p-bucket is the
// largest m with |dyadic_polynomial| > 2^{-m/10}.
Classification classify(const Eigenform& f, const ShiftSpec& spec, const HarperConfig& cfg);

// sum of 1/p over the ladder window (N^{alpha_j}, N^{alpha_{j+1}}], exact by
// sieve up to 10^7 and completed with the log log difference beyond it (the
// analytic remainder is O(1/log 10^7), far inside the slack used by the
// checks).
double window_mertens(const HarperConfig& cfg, unsigned j);

// Number of family members with log |L(sigma+it, f)| >= V.
int tail_count(const std::vector<Eigenform>& family, double sigma, double t, double V,
               const AfeOptions& opt = {});

// |E_ell(z/2)|^2, the truncated-exponential surrogate for exp(Re z).
// ceil(ell) above 10^4 raises a range error.
double exp_majorant(std::complex<double> z, double ell);

} // namespace lmoment
