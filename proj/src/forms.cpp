#include "lmoment/forms.hpp"

#include <gmpxx.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <stdexcept>

#include "detail.hpp"
#include "lmoment/arith.hpp"
#include "lmoment/parallel.hpp"

namespace lmoment {

namespace {

// ---------------------------------------------------------------------------
// Exact q-expansion machinery.  Everything below works on dense coefficient
// arrays indexed by the power of q and stays in integer arithmetic until the
// final normalization.
// ---------------------------------------------------------------------------

struct SparseTerm {
    std::size_t exponent;
    long coeff;
};

// prod_m (1 - q^(scale*m)) as the pentagonal-number series
// sum_k (-1)^k q^(scale*k(3k-1)/2) over all integers k.
std::vector<SparseTerm> euler_product_series(std::size_t scale, std::size_t max_exp) {
    std::vector<SparseTerm> out{{0, 1}};
    for (long k = 1;; ++k) {
        const std::size_t g1 = scale * static_cast<std::size_t>(k) * (3 * k - 1) / 2;
        const std::size_t g2 = scale * static_cast<std::size_t>(k) * (3 * k + 1) / 2;
        const long sign = (k % 2 == 0) ? 1 : -1;
        bool any = false;
        if (g1 <= max_exp) { out.push_back({g1, sign}); any = true; }
        if (g2 <= max_exp) { out.push_back({g2, sign}); any = true; }
        if (!any) break;
    }
    return out;
}

// prod_m (1 - q^m)^3 = sum_k (-1)^k (2k+1) q^(k(k+1)/2).
std::vector<SparseTerm> euler_cube_series(std::size_t max_exp) {
    std::vector<SparseTerm> out;
    for (long k = 0;; ++k) {
        const std::size_t g = static_cast<std::size_t>(k) * (k + 1) / 2;
        if (g > max_exp) break;
        out.push_back({g, (k % 2 == 0) ? (2 * k + 1) : -(2 * k + 1)});
    }
    return out;
}

void fused_add(mpz_class& acc, const mpz_class& v, long c) {
    if (c >= 0)
        mpz_addmul_ui(acc.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(c));
    else
        mpz_submul_ui(acc.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(-c));
}

void fused_add(std::int64_t& acc, std::int64_t v, long c) { acc += v * c; }

template <class T>
T convolve_at(const std::vector<T>& dense, const std::vector<SparseTerm>& sparse,
              std::size_t j) {
    T acc{};
    for (const auto& [g, c] : sparse) {
        if (g > j) continue;
        fused_add(acc, dense[j - g], c);
    }
    return acc;
}

// dense * sparse, output index by output index.
template <class T>
std::vector<T> mul_sparse(const std::vector<T>& dense, const std::vector<SparseTerm>& sparse,
                          bool parallel) {
    const auto fn = [&](std::size_t j) { return convolve_at(dense, sparse, j); };
    return parallel ? parallel_table<T>(dense.size(), fn) : serial_table<T>(dense.size(), fn);
}

// Coefficients of (prod_m (1 - q^m))^24 up to q^(count-1): cube series once,
// then seven sparse multiplications.
std::vector<mpz_class> euler24_coefficients(std::size_t count, bool parallel) {
    const auto cube = euler_cube_series(count - 1);
    std::vector<mpz_class> dense(count, mpz_class(0));
    for (const auto& [g, c] : cube) dense[g] = c;
    for (int step = 0; step < 7; ++step) dense = mul_sparse<mpz_class>(dense, cube, parallel);
    return dense;
}

// sigma_k(n) for n = 1..n_max (index 0 unused).
std::vector<mpz_class> sigma_table(unsigned k, std::size_t n_max) {
    std::vector<mpz_class> s(n_max + 1, mpz_class(0));
    mpz_class dpow;
    for (std::size_t d = 1; d <= n_max; ++d) {
        mpz_ui_pow_ui(dpow.get_mpz_t(), d, k);
        for (std::size_t j = d; j <= n_max; j += d) s[j] += dpow;
    }
    return s;
}

// -2k / B_k for the normalized Eisenstein series of weight k, from the
// Bernoulli numbers; integral for every weight used here.
long eisenstein_constant(unsigned k) {
    struct Frac { long num, den; };
    static const std::map<unsigned, Frac> bernoulli = {
        {4, {-1, 30}}, {6, {1, 42}}, {8, {-1, 30}}, {10, {5, 66}}, {14, {7, 6}},
    };
    const auto it = bernoulli.find(k);
    if (it == bernoulli.end()) throw std::domain_error("eisenstein_constant: unsupported weight");
    const long num = -2L * static_cast<long>(k) * it->second.den;
    if (num % it->second.num != 0) throw std::logic_error("eisenstein_constant: not integral");
    return num / it->second.num;
}

constexpr std::size_t kFullConvolutionLimit = 3000;

// Smallest-prime-factor sieve.
std::vector<std::uint32_t> spf_sieve(std::size_t n_max) {
    std::vector<std::uint32_t> spf(n_max + 1, 0);
    for (std::size_t i = 2; i <= n_max; ++i) {
        if (spf[i]) continue;
        for (std::size_t j = i; j <= n_max; j += i)
            if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
    }
    return spf;
}

// a(n) for the one-dimensional level-1 eigenform of weight kappa, i.e. the
// coefficients of Delta * E_{kappa-12}.  Full convolution up to
// kFullConvolutionLimit; beyond it, a(p) by a single convolution column and
// prime powers by a(p^{e+1}) = a(p) a(p^e) - p^{kappa-1} a(p^{e-1}), with the
// multiplicative fill over the smallest-prime-factor sieve.  The result is
// the exact integer sequence either way.
std::vector<mpz_class> level1_coefficients(unsigned kappa, std::size_t n_max, bool parallel) {
    const auto tau = euler24_coefficients(n_max, parallel);  // tau(n) = tau[n-1]
    if (kappa == 12) {
        std::vector<mpz_class> a(n_max + 1, mpz_class(0));
        for (std::size_t n = 1; n <= n_max; ++n) a[n] = tau[n - 1];
        return a;
    }

    const unsigned ek = kappa - 12;
    const long c = eisenstein_constant(ek);
    const auto sigma = sigma_table(ek - 1, n_max);
    std::vector<mpz_class> eis(n_max, mpz_class(0));  // eis[j] = q^j coefficient
    eis[0] = 1;
    for (std::size_t j = 1; j < n_max; ++j) eis[j] = c * sigma[j];

    std::vector<mpz_class> a(n_max + 1, mpz_class(0));
    const std::size_t full = std::min(n_max, kFullConvolutionLimit);
    const auto column = [&](std::size_t n) {
        mpz_class acc(0);
        for (std::size_t j = 0; j < n; ++j)
            acc += tau[n - 1 - j] * eis[j];
        return acc;
    };
    {
        const auto fn = [&](std::size_t i) { return column(i + 1); };
        auto lower = parallel ? parallel_table<mpz_class>(full, fn) : serial_table<mpz_class>(full, fn);
        for (std::size_t n = 1; n <= full; ++n) a[n] = std::move(lower[n - 1]);
    }
    if (n_max <= full) return a;

    const auto spf = spf_sieve(n_max);
    {
        std::vector<std::size_t> high_primes;
        for (std::size_t p = full + 1; p <= n_max; ++p)
            if (spf[p] == p) high_primes.push_back(p);
        const auto fn = [&](std::size_t i) { return column(high_primes[i]); };
        auto vals = parallel ? parallel_table<mpz_class>(high_primes.size(), fn)
                             : serial_table<mpz_class>(high_primes.size(), fn);
        for (std::size_t i = 0; i < high_primes.size(); ++i)
            a[high_primes[i]] = std::move(vals[i]);
    }

    mpz_class pk;  // p^(kappa-1)
    for (std::size_t p = 2; p <= n_max; ++p) {
        if (spf[p] != p) continue;
        if (p > n_max / p) break;  // p^2 already out of range
        mpz_ui_pow_ui(pk.get_mpz_t(), p, kappa - 1);
        std::size_t prev2 = 1, prev = p, pe = p * p;
        while (true) {
            if (pe > full) a[pe] = a[p] * a[prev] - pk * a[prev2];
            if (pe > n_max / p) break;
            prev2 = prev;
            prev = pe;
            pe *= p;
        }
    }
    for (std::size_t n = full + 1; n <= n_max; ++n) {
        const std::size_t p = spf[n];
        std::size_t pv = 1, m = n;
        while (m % p == 0) { m /= p; pv *= p; }
        if (m == 1) continue;  // prime power, set above
        a[n] = a[pv] * a[m];
    }
    return a;
}

// a(n) for the level-11 weight-2 form: q prod (1-q^m)^2 (1-q^(11m))^2.
// Coefficients stay far inside int64.
std::vector<std::int64_t> level11_coefficients(std::size_t n_max, bool parallel) {
    std::vector<std::int64_t> dense(n_max, 0);
    dense[0] = 1;
    const auto p1 = euler_product_series(1, n_max - 1);
    const auto p11 = euler_product_series(11, n_max - 1);
    dense = mul_sparse<std::int64_t>(dense, p1, parallel);
    dense = mul_sparse<std::int64_t>(dense, p1, parallel);
    dense = mul_sparse<std::int64_t>(dense, p11, parallel);
    dense = mul_sparse<std::int64_t>(dense, p11, parallel);
    std::vector<std::int64_t> a(n_max + 1, 0);
    for (std::size_t n = 1; n <= n_max; ++n) a[n] = dense[n - 1];
    return a;
}

struct BuiltinMeta {
    BuiltinId id;
    const char* name;
    std::uint64_t level;
    unsigned weight;
};

const BuiltinMeta kBuiltins[] = {
    {BuiltinId::delta12, "delta12", 1, 12},
    {BuiltinId::level1_weight16, "level1_weight16", 1, 16},
    {BuiltinId::level1_weight18, "level1_weight18", 1, 18},
    {BuiltinId::level1_weight20, "level1_weight20", 1, 20},
    {BuiltinId::level1_weight22, "level1_weight22", 1, 22},
    {BuiltinId::level1_weight26, "level1_weight26", 1, 26},
    {BuiltinId::level11_weight2, "level11_weight2", 11, 2},
};

const BuiltinMeta& meta_for(BuiltinId id) {
    for (const auto& m : kBuiltins)
        if (m.id == id) return m;
    throw std::domain_error("unknown builtin form id");
}

} // namespace

double Eigenform::coeff(std::uint64_t n) const {
    if (n < 1 || n > n_max())
        throw std::out_of_range("Eigenform::coeff: n = " + std::to_string(n) +
                                " outside stored range 1.." + std::to_string(n_max()));
    return lambda[static_cast<std::size_t>(n)];
}

BuiltinId builtin_id_from_string(const std::string& name) {
    for (const auto& m : kBuiltins)
        if (name == m.name) return m.id;
    throw std::domain_error("unknown builtin form id: " + name);
}

const std::vector<std::string>& builtin_ids() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& m : kBuiltins) v.push_back(m.name);
        return v;
    }();
    return names;
}

namespace {

Eigenform builtin_form_impl(BuiltinId id, std::size_t n_max, bool parallel) {
    if (n_max < 1) throw std::domain_error("builtin_form: n_max must be >= 1");
    const auto& m = meta_for(id);

    Eigenform f;
    f.id = m.name;
    f.level = m.level;
    f.weight = m.weight;
    f.source = FormSource::builtin;
    f.lambda.assign(n_max + 1, 0.0);

    const double half = (static_cast<double>(m.weight) - 1.0) / 2.0;
    if (m.level == 1) {
        const auto a = level1_coefficients(m.weight, n_max, parallel);
        for (std::size_t n = 1; n <= n_max; ++n)
            f.lambda[n] = mpz_get_d(a[n].get_mpz_t()) / std::pow(static_cast<double>(n), half);
    } else {
        const auto a = level11_coefficients(n_max, parallel);
        for (std::size_t n = 1; n <= n_max; ++n)
            f.lambda[n] = static_cast<double>(a[n]) / std::pow(static_cast<double>(n), half);
    }
    return f;
}

} // namespace

Eigenform builtin_form(BuiltinId id, std::size_t n_max) {
    return builtin_form_impl(id, n_max, true);
}

Eigenform builtin_form_serial(BuiltinId id, std::size_t n_max) {
    return builtin_form_impl(id, n_max, false);
}

Eigenform builtin_form(const std::string& id, std::size_t n_max) {
    return builtin_form(builtin_id_from_string(id), n_max);
}

void write_coefficients(const Eigenform& f, std::ostream& os) {
    os << "#meta level=" << f.level << " weight=" << f.weight
       << " count=" << f.n_max() << " normalized=true\n";
    char buf[64];
    for (std::size_t n = 1; n <= f.n_max(); ++n) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", n, f.lambda[n]);
        os << buf;
    }
}

void write_coefficients_file(const Eigenform& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_coefficients(f, os);
}

Eigenform load_coefficients(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open coefficient file: " + path);

    std::string header;
    if (!std::getline(is, header))
        throw std::runtime_error(path + ": empty file");
    std::uint64_t level = 0, count = 0;
    unsigned weight = 0;
    char norm[16] = {0};
    if (std::sscanf(header.c_str(), "#meta level=%lu weight=%u count=%lu normalized=%15s",
                    &level, &weight, &count, norm) != 4 ||
        std::string(norm) != "true")
        throw std::runtime_error(path + ": malformed #meta header");
    if (count < 1) throw std::runtime_error(path + ": count must be >= 1");

    Eigenform f;
    f.id = path;
    f.level = level;
    f.weight = weight;
    f.source = FormSource::file;
    f.lambda.assign(count + 1, 0.0);

    std::string line;
    std::uint64_t expected = 1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::uint64_t n = 0;
        double v = 0.0;
        if (std::sscanf(line.c_str(), "%lu,%lf", &n, &v) != 2)
            throw std::runtime_error(path + ": parse error at line for n=" + std::to_string(expected));
        if (n != expected)
            throw std::runtime_error(path + ": expected n=" + std::to_string(expected) +
                                     ", got n=" + std::to_string(n));
        f.lambda[n] = v;
        ++expected;
        if (expected > count + 1) break;
    }
    if (expected != count + 1)
        throw std::runtime_error(path + ": missing coefficients, stopped at n=" +
                                 std::to_string(expected - 1));

    validate_form(f, std::min<std::size_t>(f.n_max(), 10000));
    return f;
}

void validate_form(const Eigenform& f, std::size_t up_to, double tol) {
    if (f.n_max() < 1) throw std::runtime_error("form has no coefficients");
    if (std::abs(f.lambda[1] - 1.0) > 1e-12)
        throw std::runtime_error("invariant lambda(1)=1 violated: lambda(1)=" +
                                 std::to_string(f.lambda[1]));

    for (std::size_t n = 1; n <= up_to; ++n) {
        const double bound = static_cast<double>(divisor_count(n));
        if (std::abs(f.lambda[n]) > bound + 1e-9)
            throw std::runtime_error("divisor bound violated at n=" + std::to_string(n) +
                                     ": |lambda|=" + std::to_string(std::abs(f.lambda[n])) +
                                     " > d(n)=" + std::to_string(bound));
    }

    // lambda(p) lambda(m) = lambda(pm) + [p | m, p coprime to N] lambda(m/p);
    // this one-prime relation over all (p, m) implies the full divisor-sum
    // relation.
    const auto primes = primes_up_to(std::max<std::uint64_t>(2, up_to));
    for (std::uint64_t p : primes.primes) {
        if (p > up_to) break;
        for (std::uint64_t m = 1; p * m <= up_to; ++m) {
            double rhs = f.lambda[p * m];
            if (m % p == 0 && f.level % p != 0) rhs += f.lambda[m / p];
            const double lhs = f.lambda[p] * f.lambda[m];
            if (std::abs(lhs - rhs) > tol)
                throw std::runtime_error("multiplicative relation violated at p=" +
                                         std::to_string(p) + ", m=" + std::to_string(m) +
                                         ": residual=" + std::to_string(std::abs(lhs - rhs)));
        }
    }
}

double hecke_product(const Eigenform& f, std::uint64_t m, std::uint64_t n) {
    if (m < 1 || n < 1) throw std::out_of_range("hecke_product: m, n must be >= 1");
    if (m > f.n_max() / n) throw std::out_of_range("hecke_product: mn exceeds stored range");
    const std::uint64_t mn = m * n;

    const std::uint64_t g = detail::gcd_u64(m, n);
    double acc = 0.0;
    for (std::uint64_t d = 1; d <= g; ++d) {
        if (g % d) continue;
        if (detail::gcd_u64(d, f.level) != 1) continue;
        acc += f.lambda[mn / (d * d)];
    }
    return acc;
}

double power_expansion(const Eigenform& f, std::uint64_t p, unsigned e) {
    if (f.level % p == 0) throw std::domain_error("power_expansion: p divides the level");
    if (e == 0) return 1.0;

    // lambda(p^l) by the unramified recurrence, preferring stored values.
    const unsigned lmax = e;
    std::vector<double> lp(lmax + 1);
    lp[0] = 1.0;
    lp[1] = f.coeff(p);
    std::uint64_t pl = p;  // p^(l-1), or 0 once past the stored range
    for (unsigned l = 2; l <= lmax; ++l) {
        pl = (pl != 0 && pl <= f.n_max() / p) ? pl * p : 0;
        if (pl != 0)
            lp[l] = f.lambda[pl];
        else
            lp[l] = f.lambda[p] * lp[l - 1] - lp[l - 2];
    }

    const auto binom = [](unsigned n, long k) -> double {
        if (k < 0 || k > static_cast<long>(n)) return 0.0;
        unsigned long long acc = 1;
        for (long i = 1; i <= k; ++i)
            acc = acc * (n - static_cast<unsigned long>(k) + i) / i;
        return static_cast<double>(acc);
    };

    const unsigned mhalf = e / 2;
    double acc = 0.0;
    for (unsigned r = 0; r <= mhalf; ++r) {
        const double w = binom(e, static_cast<long>(mhalf - r)) -
                         binom(e, static_cast<long>(mhalf - r) - 1);
        const unsigned idx = (e % 2 == 0) ? 2 * r : 2 * r + 1;
        acc += w * lp[idx];
    }
    return acc;
}

PrimeFrame prime_frame(const Eigenform& f, std::uint64_t p, unsigned max_power) {
    PrimeFrame frame;
    frame.p = p;
    frame.values.resize(max_power + 1);
    frame.values[0] = 2.0;
    if (max_power == 0) return frame;
    const double lp = f.coeff(p);
    frame.values[1] = lp;
    const double chi = (f.level % p == 0) ? 0.0 : 1.0;
    for (unsigned l = 2; l <= max_power; ++l)
        frame.values[l] = lp * frame.values[l - 1] - chi * frame.values[l - 2];
    return frame;
}

double root_number_raw(const Eigenform& f) {
    const int ik = (f.weight / 2) % 2 == 0 ? 1 : -1;  // i^kappa for even kappa
    if (f.level == 1) return ik;
    // prime level: mu(N) = -1 and |lambda(N)| = N^{-1/2}
    return -ik * f.coeff(f.level) * std::sqrt(static_cast<double>(f.level));
}

double root_number(const Eigenform& f) {
    if (f.eps != 0.0) return f.eps;
    const double raw = root_number_raw(f);
    if (std::abs(std::abs(raw) - 1.0) > 1e-3)
        throw std::runtime_error("root number |eps| = " + std::to_string(std::abs(raw)) +
                                 " too far from 1 for form " + f.id);
    return raw > 0 ? 1.0 : -1.0;
}

double root_number(Eigenform& f) {
    const double eps = root_number(static_cast<const Eigenform&>(f));
    f.eps = eps;
    return eps;
}

Eigenform synthetic_form(std::uint64_t level, unsigned weight, std::size_t n_max,
                         std::uint64_t seed, const std::string& id) {
    Eigenform f;
    f.id = id;
    f.level = level;
    f.weight = weight;
    f.source = FormSource::file;
    f.lambda.assign(n_max + 1, 0.0);
    f.lambda[1] = 1.0;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.01, 3.13);

    const auto spf = spf_sieve(n_max);
    for (std::size_t p = 2; p <= n_max; ++p) {
        if (spf[p] != p) continue;
        if (p == level) {
            const double sign = (rng() & 1) ? 1.0 : -1.0;
            f.lambda[p] = sign / std::sqrt(static_cast<double>(level));
            std::uint64_t pe = p;
            while (pe <= n_max / p) { pe *= p; f.lambda[pe] = f.lambda[pe / p] * f.lambda[p]; }
            continue;
        }
        const double th = angle(rng);
        f.lambda[p] = 2.0 * std::cos(th);
        // Chebyshev values sin((e+1)theta)/sin(theta) via the recurrence.
        double prev = 1.0, cur = f.lambda[p];
        std::uint64_t pe = p;
        while (pe <= n_max / p) {
            pe *= p;
            const double next = f.lambda[p] * cur - prev;
            f.lambda[pe] = next;
            prev = cur;
            cur = next;
        }
    }
    for (std::size_t n = 2; n <= n_max; ++n) {
        const std::size_t p = spf[n];
        std::size_t pv = 1, m = n;
        while (m % p == 0) { m /= p; pv *= p; }
        if (m == 1) continue;
        f.lambda[n] = f.lambda[pv] * f.lambda[m];
    }
    return f;
}

} // namespace lmoment
