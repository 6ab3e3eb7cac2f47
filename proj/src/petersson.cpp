#include "lmoment/petersson.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "detail.hpp"
#include "lmoment/parallel.hpp"
#include "lmoment/special.hpp"

namespace lmoment {

namespace {

constexpr double kPi = std::numbers::pi;

void check_family_uniform(const std::vector<Eigenform>& family) {
    for (const auto& f : family)
        if (f.level != family.front().level || f.weight != family.front().weight)
            throw std::domain_error("family mixes levels or weights");
}

struct TailJob {
    std::uint64_t m;
    std::uint64_t c;
};

double tail_term(unsigned kappa, std::uint64_t N, std::uint64_t n, const TailJob& job) {
    const double ik = (kappa / 2) % 2 == 0 ? 1.0 : -1.0;  // i^kappa, kappa even
    const double md = static_cast<double>(job.m);
    const double cd = static_cast<double>(job.c);
    const double s = kloosterman(static_cast<std::int64_t>(job.m * job.m),
                                 static_cast<std::int64_t>(n), job.c)
                         .value;
    const double x = 4.0 * kPi * md * std::sqrt(static_cast<double>(n)) / cd;
    const double j = bessel_j(kappa - 1, x);
    return (static_cast<double>(kappa - 1) * static_cast<double>(N) / 12.0) *
           (2.0 * kPi * ik / md) * (s / cd) * j;
}

// Bound on the dropped c > c_max part of the c-sum for a fixed m, from
// |J_{kappa-1}(x)| <= (x/2)^{kappa-1} / Gamma(kappa) and
// |S(a,b;c)| <= d(c) sqrt(gcd(a,b,c)) sqrt(c); the divisor factor is what
// keeps the bound summable at kappa = 2.
double tail_bound_for_m(unsigned kappa, std::uint64_t N, std::uint64_t n,
                        std::uint64_t m, std::uint64_t c_max) {
    const double md = static_cast<double>(m);
    // x/2 = base/c with x = 4 pi m sqrt(n)/c, so (x/2)^{kappa-1} = base^{kappa-1} c^{1-kappa}.
    const double base = 2.0 * kPi * md * std::sqrt(static_cast<double>(n));
    const double lg = (kappa - 1) * std::log(base) - std::lgamma(static_cast<double>(kappa));
    const double g = static_cast<double>(detail::gcd_u64(m * m, n));
    const std::uint64_t j0 = std::max<std::uint64_t>(c_max / N, 1);
    // sum over c = N j, j > j0 of d(c) c^{1/2 - kappa}; d(Nj) <= d(N) d(j) = 2 d(j).
    const double s = static_cast<double>(kappa) - 0.5;
    const double tail_j = detail::divisor_tail_bound(s, static_cast<double>(j0));
    const double c_factor = 2.0 * std::pow(static_cast<double>(N), 0.5 - static_cast<double>(kappa));
    return (static_cast<double>(kappa - 1) * static_cast<double>(N) / 12.0) *
           (2.0 * kPi / md) * std::sqrt(g) * std::exp(lg) * c_factor * tail_j;
}

PeterssonTerm petersson_average_impl(unsigned kappa, std::uint64_t N, std::uint64_t n,
                                     double Y, std::uint64_t c_max, bool parallel) {
    if (kappa < 2 || kappa % 2 != 0) throw std::domain_error("petersson_average: weight must be even and >= 2");
    if (n < 1) throw std::domain_error("petersson_average: n must be >= 1");
    const std::uint64_t g = detail::gcd_u64(n, N * N);
    if (N % g != 0) throw std::domain_error("petersson_average: requires (n, N^2) | N");
    if (c_max < N) throw std::domain_error("petersson_average: requires c_max >= N");

    PeterssonTerm out;
    out.kappa = kappa;
    out.N = N;
    out.n = n;
    out.Y = Y;
    out.c_max = c_max;

    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)) + 0.5);
    const bool is_square = root * root == n && static_cast<double>(root) <= Y;
    out.main_term = is_square
        ? static_cast<double>(kappa - 1) * static_cast<double>(N) /
              (12.0 * std::sqrt(static_cast<double>(n)))
        : 0.0;

    std::vector<TailJob> jobs;
    for (std::uint64_t m = 1; static_cast<double>(m) <= Y; ++m) {
        if (detail::gcd_u64(m, N) != 1) continue;
        for (std::uint64_t c = N; c <= c_max; c += N) jobs.push_back({m, c});
    }
    const auto fn = [&](std::size_t i) { return tail_term(kappa, N, n, jobs[i]); };
    const auto terms = parallel ? parallel_table<double>(jobs.size(), fn)
                                : serial_table<double>(jobs.size(), fn);
    double tail = 0.0;
    for (double v : terms) tail += v;  // ascending (m, c)
    out.kloosterman_tail = tail;

    double bound = 0.0;
    for (std::uint64_t m = 1; static_cast<double>(m) <= Y; ++m) {
        if (detail::gcd_u64(m, N) != 1) continue;
        bound += tail_bound_for_m(kappa, N, n, m, c_max);
    }
    out.truncation_estimate = bound;
    return out;
}

} // namespace

double family_eigenvalue_sum(const std::vector<Eigenform>& family, std::uint64_t n) {
    check_family_uniform(family);
    double acc = 0.0;
    for (const auto& f : family) acc += f.coeff(n);
    return acc;
}

PeterssonTerm petersson_average(unsigned kappa, std::uint64_t N, std::uint64_t n,
                                double Y, std::uint64_t c_max) {
    return petersson_average_impl(kappa, N, n, Y, c_max, true);
}

PeterssonTerm petersson_average_serial(unsigned kappa, std::uint64_t N, std::uint64_t n,
                                       double Y, std::uint64_t c_max) {
    return petersson_average_impl(kappa, N, n, Y, c_max, false);
}

double petersson_residual(unsigned kappa, std::uint64_t N,
                          const std::vector<Eigenform>& family, std::uint64_t n,
                          double Y, std::uint64_t c_max) {
    double star = 0.0;
    if (!family.empty()) {
        check_family_uniform(family);
        if (family.front().weight != kappa || family.front().level != N)
            throw std::domain_error("petersson_residual: family does not match (kappa, N)");
        star = family_eigenvalue_sum(family, n);
    }
    const auto term = petersson_average(kappa, N, n, Y, c_max);
    return star - (term.main_term + term.kloosterman_tail);
}

FamilySizeModel family_size_model(unsigned kappa, std::uint64_t N) {
    if (N <= 1) throw std::domain_error("family_size_model: requires N > 1");
    FamilySizeModel out;
    out.model = static_cast<double>(kappa - 1) * static_cast<double>(N) / 12.0;
    out.band = std::pow(static_cast<double>(kappa) * static_cast<double>(N), 5.0 / 6.0);
    return out;
}

std::uint64_t default_c_max(std::uint64_t N, std::uint64_t n, double Y) {
    const double root = std::ceil(std::sqrt(static_cast<double>(n)));
    const double v = 100.0 * static_cast<double>(N) * root * std::max(Y, 1.0);
    return static_cast<std::uint64_t>(v);
}

} // namespace lmoment
