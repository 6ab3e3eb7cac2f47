#pragma once

#include <cstdint>
#include <vector>

namespace lmoment {

struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;

    bool contains(std::uint64_t n) const;
    std::size_t count() const { return primes.size(); }
};

// Sieve of Eratosthenes; switches to a segmented sieve above 10^7 so memory
// stays proportional to sqrt(limit) + segment size.
PrimeTable primes_up_to(std::uint64_t limit);

enum class MultiplicativeKind { divisor_count, euler_phi, mobius };

std::int64_t multiplicative_fn(MultiplicativeKind kind, std::uint64_t n);

inline std::int64_t divisor_count(std::uint64_t n) {
    return multiplicative_fn(MultiplicativeKind::divisor_count, n);
}
inline std::int64_t euler_phi(std::uint64_t n) {
    return multiplicative_fn(MultiplicativeKind::euler_phi, n);
}
inline std::int64_t mobius(std::uint64_t n) {
    return multiplicative_fn(MultiplicativeKind::mobius, n);
}

struct MertensSums {
    double x = 0.0;
    double recip_sum = 0.0;  // sum over p <= x of 1/p
    double logp_sum = 0.0;   // sum over p <= x of log(p)/p
};

// Both sums are accumulated over primes in ascending order.  With
// compensated=true a Neumaier accumulator is used instead of plain doubles.
MertensSums mertens_sums(double x, bool compensated = false);
MertensSums mertens_sums(double x, const PrimeTable& table, bool compensated = false);

// Estimate of the constant b with sum_{p<=x} 1/p = log log x + b + o(1),
// computed from the absolutely convergent product form
//   b = gamma + sum_p [ log(1 - 1/p) + 1/p ]
// truncated at p_limit (truncation error is below 1/p_limit).
double mertens_constant_estimate(std::uint64_t p_limit = 1000000);

// Exact sum of 1/p over primes in (a, b]; requires b <= table.limit.
double prime_recip_between(double a, double b, const PrimeTable& table);

} // namespace lmoment
