#include "lmoment/arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lmoment {

namespace {

constexpr std::uint64_t kSegmentThreshold = 10000000;  // 10^7
constexpr std::uint64_t kSegmentSize = 1 << 20;

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

} // namespace

bool PrimeTable::contains(std::uint64_t n) const {
    return std::binary_search(primes.begin(), primes.end(), n);
}

PrimeTable primes_up_to(std::uint64_t limit) {
    if (limit < 2) throw std::domain_error("primes_up_to: limit must be >= 2");

    PrimeTable table;
    table.limit = limit;
    if (limit <= kSegmentThreshold) {
        table.primes = simple_sieve(limit);
        return table;
    }

    // Segmented sieve: base primes up to sqrt(limit), then fixed-size windows.
    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
    const std::vector<std::uint64_t> base = simple_sieve(root);
    table.primes = base;
    std::vector<bool> seg;
    for (std::uint64_t lo = root + 1; lo <= limit; lo += kSegmentSize) {
        const std::uint64_t hi = std::min(limit, lo + kSegmentSize - 1);
        seg.assign(hi - lo + 1, false);
        for (std::uint64_t p : base) {
            if (p * p > hi) break;
            std::uint64_t start = ((lo + p - 1) / p) * p;
            if (start < p * p) start = p * p;
            for (std::uint64_t j = start; j <= hi; j += p) seg[j - lo] = true;
        }
        for (std::uint64_t i = lo; i <= hi; ++i)
            if (!seg[i - lo]) table.primes.push_back(i);
    }
    return table;
}

std::int64_t multiplicative_fn(MultiplicativeKind kind, std::uint64_t n) {
    if (n < 1) throw std::domain_error("multiplicative_fn: n must be >= 1");

    std::int64_t d = 1;    // divisor count
    std::int64_t phi = 1;  // totient
    std::int64_t mu = 1;   // Moebius
    std::uint64_t rest = n;
    for (std::uint64_t p = 2; p * p <= rest; p += (p == 2 ? 1 : 2)) {
        if (rest % p) continue;
        unsigned e = 0;
        std::int64_t pe = 1;  // p^(e-1)
        while (rest % p == 0) {
            rest /= p;
            if (e) pe *= static_cast<std::int64_t>(p);
            ++e;
        }
        d *= (e + 1);
        phi *= pe * static_cast<std::int64_t>(p - 1);
        mu = (e > 1) ? 0 : -mu;
    }
    if (rest > 1) {
        d *= 2;
        phi *= static_cast<std::int64_t>(rest - 1);
        mu = -mu;
    }
    switch (kind) {
        case MultiplicativeKind::divisor_count: return d;
        case MultiplicativeKind::euler_phi: return phi;
        case MultiplicativeKind::mobius: return mu;
    }
    throw std::logic_error("multiplicative_fn: bad kind");
}

namespace {

// Neumaier-compensated accumulator.
struct Accum {
    double sum = 0.0;
    double comp = 0.0;
    bool compensated = false;

    void add(double v) {
        if (!compensated) {
            sum += v;
            return;
        }
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double get() const { return compensated ? sum + comp : sum; }
};

} // namespace

MertensSums mertens_sums(double x, const PrimeTable& table, bool compensated) {
    if (x < 2.0) throw std::domain_error("mertens_sums: x must be >= 2");
    if (static_cast<double>(table.limit) < x)
        throw std::domain_error("mertens_sums: prime table too small");

    Accum recip{0.0, 0.0, compensated};
    Accum logp{0.0, 0.0, compensated};
    for (std::uint64_t p : table.primes) {
        if (static_cast<double>(p) > x) break;
        const double pd = static_cast<double>(p);
        recip.add(1.0 / pd);
        logp.add(std::log(pd) / pd);
    }
    return MertensSums{x, recip.get(), logp.get()};
}

MertensSums mertens_sums(double x, bool compensated) {
    if (x < 2.0) throw std::domain_error("mertens_sums: x must be >= 2");
    const auto table = primes_up_to(static_cast<std::uint64_t>(x));
    return mertens_sums(x, table, compensated);
}

double mertens_constant_estimate(std::uint64_t p_limit) {
    static const double euler_gamma = 0.57721566490153286;
    const auto table = primes_up_to(p_limit);
    double acc = 0.0;
    for (std::uint64_t p : table.primes) {
        const double pd = static_cast<double>(p);
        acc += std::log1p(-1.0 / pd) + 1.0 / pd;
    }
    return euler_gamma + acc;
}

double prime_recip_between(double a, double b, const PrimeTable& table) {
    if (static_cast<double>(table.limit) < b)
        throw std::domain_error("prime_recip_between: table too small");
    double s = 0.0;
    for (std::uint64_t p : table.primes) {
        const double pd = static_cast<double>(p);
        if (pd <= a) continue;
        if (pd > b) break;
        s += 1.0 / pd;
    }
    return s;
}

} // namespace lmoment
