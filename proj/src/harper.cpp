#include "lmoment/harper.hpp"

#include <cmath>
#include <stdexcept>

#include "lmoment/parallel.hpp"
#include "lmoment/special.hpp"

namespace lmoment {

double ShiftSpec::a_total() const {
    double s = 0.0;
    for (double v : a) s += v;
    return s;
}

void ShiftSpec::validate(std::uint64_t N) const {
    if (a.empty() || a.size() != t.size())
        throw std::domain_error("ShiftSpec: a and t must be nonempty and of equal length");
    for (double v : a)
        if (v <= 0.0) throw std::domain_error("ShiftSpec: exponents must be positive");
    if (A <= 0.0) throw std::domain_error("ShiftSpec: A must be positive");
    const double cap = std::pow(static_cast<double>(N), A);
    for (double v : t)
        if (std::abs(v) > cap) throw std::domain_error("ShiftSpec: |t_j| exceeds N^A");
}

double lambda0() {
    static const double root = [] {
        double x = 0.5;
        for (int i = 0; i < 60; ++i) {
            const double fx = std::exp(-x) - x - x * x / 2.0;
            const double dfx = -std::exp(-x) - 1.0 - x;
            x -= fx / dfx;
        }
        return x;
    }();
    return root;
}

HarperConfig HarperConfig::make(std::uint64_t N, double T, double slack_C) {
    if (N < 100) throw std::domain_error("HarperConfig: N must be >= 100");
    if (T <= 0.0) throw std::domain_error("HarperConfig: T must be positive");

    HarperConfig cfg;
    cfg.N = N;
    cfg.T = T;
    cfg.slack_C = slack_C;
    cfg.lambda_smooth = lambda0();

    const double log_n = std::log(static_cast<double>(N));
    const double ll = std::log(log_n);
    const double threshold = std::pow(10.0, -T);

    cfg.alphas.push_back(std::log(2.0) / log_n);
    cfg.alphas.push_back(1.0 / (ll * ll));
    int max_ok = cfg.alphas[0] <= threshold ? 0 : -1;
    if (cfg.alphas[1] <= threshold) max_ok = 1;
    unsigned i = 1;
    while (cfg.alphas[i] <= threshold) {
        cfg.alphas.push_back(20.0 * cfg.alphas[i]);
        ++i;
        if (cfg.alphas[i] <= threshold) max_ok = static_cast<int>(i);
    }
    cfg.J = static_cast<unsigned>(std::max(1, 1 + max_ok));
    while (cfg.alphas.size() <= cfg.J + 1)
        cfg.alphas.push_back(20.0 * cfg.alphas.back());
    return cfg;
}

double HarperConfig::alpha(unsigned i) const {
    if (i >= alphas.size()) throw std::out_of_range("HarperConfig::alpha: index beyond ladder");
    return alphas[i];
}

std::uint64_t HarperConfig::max_dyadic_index() const {
    const double ll = std::log(std::log(static_cast<double>(N)));
    return static_cast<std::uint64_t>(std::floor(ll / std::log(2.0)));
}

std::complex<double> shift_weight(const ShiftSpec& spec, std::uint64_t n) {
    if (n < 1) throw std::domain_error("shift_weight: n must be >= 1");
    const double ln = std::log(static_cast<double>(n));
    std::complex<double> acc = 0.0;
    for (std::size_t m = 0; m < spec.a.size(); ++m)
        acc += spec.a[m] * std::polar(1.0, -spec.t[m] * ln);
    return 0.5 * acc;
}

double grh_log_bound(const Eigenform& f, double sigma, double t, double x,
                     const HarperConfig& cfg) {
    if (sigma < 0.5) throw std::domain_error("grh_log_bound: sigma must be >= 1/2");
    if (x < 2.0) throw std::domain_error("grh_log_bound: x must be >= 2");
    if (cfg.lambda_smooth < 0.4912)
        throw std::domain_error("grh_log_bound: lambda below the admissible root");

    const double lam = cfg.lambda_smooth;
    const double log_x = std::log(x);
    const double expo_shift = lam / log_x;

    const auto table = primes_up_to(static_cast<std::uint64_t>(x));
    double prime_part = 0.0;
    for (std::uint64_t p : table.primes) {
        const double lp = std::log(static_cast<double>(p));
        const unsigned l_max = static_cast<unsigned>(std::floor(log_x / lp + 1e-12));
        if (l_max == 0) continue;
        const auto frame = prime_frame(f, p, l_max);
        for (unsigned l = 1; l <= l_max; ++l) {
            const double llp = static_cast<double>(l) * lp;
            if (llp > log_x + 1e-12) break;
            const double weight = (log_x - llp) / log_x;
            const double mag = std::exp(-llp * (sigma + expo_shift));
            prime_part += frame.values[l] / static_cast<double>(l) * mag *
                          std::cos(llp * t) * weight;
        }
    }

    const double arch = (1.0 + lam) * (std::log(std::sqrt(static_cast<double>(f.level))) +
                                       std::log(std::abs(t) + 2.0));
    return prime_part + arch + cfg.slack_C * (lam / log_x + 1.0);
}

double grh_shifted_log_bound(const Eigenform& f, const ShiftSpec& spec, double sigma,
                             double x, const HarperConfig& cfg) {
    if (x < 4.0) throw std::domain_error("grh_shifted_log_bound: x must be >= 4");
    const double log_x = std::log(x);
    if (sigma < 0.5 || sigma - 0.5 > 2.0 / log_x + 1e-12)
        throw std::domain_error("grh_shifted_log_bound: sigma - 1/2 must be O(1/log x)");
    spec.validate(f.level > 1 ? f.level : cfg.N);

    const double expo = 0.5 + std::max(sigma - 0.5, 1.0 / log_x);
    const auto table = primes_up_to(static_cast<std::uint64_t>(x));

    double first = 0.0;
    for (std::uint64_t p : table.primes) {
        const double pd = static_cast<double>(p);
        if (pd > x) break;
        const double weight = (log_x - std::log(pd)) / log_x;
        const std::complex<double> h = shift_weight(spec, p);
        first += 2.0 * (h.real() * f.coeff(p)) * std::pow(pd, -expo) * weight;
    }

    const double level_log = std::log(static_cast<double>(f.level));
    const double cut = std::min(std::sqrt(x), level_log);
    double second = 0.0;
    for (std::uint64_t p : table.primes) {
        const double pd = static_cast<double>(p);
        if (pd > cut) break;
        const std::complex<double> h2 = shift_weight(spec, p * p);
        second += (h2 * (f.coeff(p * p) - 1.0)).real() / pd;
    }

    const double drift = (spec.A + 1.0) * spec.a_total() * level_log / log_x;
    return first - second + drift + cfg.slack_C;
}

std::complex<double> window_polynomial(const Eigenform& f, const ShiftSpec& spec,
                                       const HarperConfig& cfg, unsigned i, unsigned j) {
    if (i < 1 || i > j || j > cfg.J)
        throw std::domain_error("window_polynomial: requires 1 <= i <= j <= J");
    const double log_n = std::log(static_cast<double>(cfg.N));
    const double hi = std::exp(cfg.alpha(i) * log_n);
    if (hi > static_cast<double>(cfg.prime_enum_limit))
        throw std::range_error("window_polynomial: window end " + std::to_string(hi) +
                               " beyond the prime enumeration limit");

    const double log_xj = cfg.alpha(j) * log_n;  // log N^{alpha_j}
    const double expo = 0.5 + 1.0 / log_xj;

    // Window membership is decided in exponent space: log p / log N is the
    // exact quantity the ladder was built from, so p = 2 lands bitwise on
    // alpha_0 and stays excluded.
    const auto table = primes_up_to(static_cast<std::uint64_t>(hi) + 2);
    std::complex<double> acc = 0.0;
    for (std::uint64_t p : table.primes) {
        const double u = std::log(static_cast<double>(p)) / log_n;
        if (u <= cfg.alpha(i - 1)) continue;
        if (u > cfg.alpha(i)) break;
        const double pd = static_cast<double>(p);
        const double weight = (log_xj - std::log(pd)) / log_xj;
        acc += 2.0 * shift_weight(spec, p) * f.coeff(p) * std::pow(pd, -expo) * weight;
    }
    return acc;
}

std::complex<double> dyadic_polynomial(const Eigenform& f, const ShiftSpec& spec,
                                       const HarperConfig& cfg, std::uint64_t m) {
    if (m > cfg.max_dyadic_index())
        throw std::domain_error("dyadic_polynomial: m beyond floor(log log N / log 2)");
    const std::uint64_t lo = 1ULL << m;
    const std::uint64_t hi = 1ULL << (m + 1);

    const auto table = primes_up_to(hi);
    std::complex<double> acc = 0.0;
    for (std::uint64_t p : table.primes) {
        if (p <= lo) continue;
        if (p > hi) break;
        acc -= shift_weight(spec, p * p) * (f.coeff(p * p) - 1.0) /
               static_cast<double>(p);
    }
    return acc;
}

std::string to_string(const BucketLabel& label) {
    return (label.kind == BucketLabel::Kind::S ? "S(" : "P(") + std::to_string(label.index) + ")";
}

Classification classify(const Eigenform& f, const ShiftSpec& spec, const HarperConfig& cfg) {
    Classification out;

    // Smallest j whose next window row fails; J if every row passes.
    unsigned s_index = cfg.J;
    for (unsigned j = 0; j < cfg.J; ++j) {
        bool row_fails = false;
        const double threshold = std::pow(cfg.alpha(j + 1), -0.75);
        for (unsigned l = j + 1; l <= cfg.J; ++l) {
            if (std::abs(window_polynomial(f, spec, cfg, j + 1, l)) > threshold) {
                row_fails = true;
                break;
            }
        }
        if (row_fails) {
            s_index = j;
            break;
        }
    }
    out.s_bucket = BucketLabel{BucketLabel::Kind::S, static_cast<int>(s_index)};

    const std::uint64_t m_max = cfg.max_dyadic_index();
    for (std::uint64_t m = m_max + 1; m-- > 0;) {
        const double threshold = std::pow(2.0, -static_cast<double>(m) / 10.0);
        if (std::abs(dyadic_polynomial(f, spec, cfg, m)) > threshold) {
            out.p_bucket = BucketLabel{BucketLabel::Kind::P, static_cast<int>(m)};
            break;
        }
    }
    return out;
}

double window_mertens(const HarperConfig& cfg, unsigned j) {
    const double log_n = std::log(static_cast<double>(cfg.N));
    const double a = std::exp(cfg.alpha(j) * log_n);
    const double b = std::exp(cfg.alpha(j + 1) * log_n);

    const double exact_cap = std::min(b, 1e7);
    double acc = 0.0;
    if (exact_cap > a && exact_cap >= 2.0) {
        const auto table = primes_up_to(static_cast<std::uint64_t>(exact_cap));
        acc += prime_recip_between(a, exact_cap, table);
    }
    if (b > exact_cap) {
        // Mertens completion for the un-enumerable part; the constant cancels
        // in the difference and the remainder is O(1/log exact_cap).
        const double lo = std::max(a, exact_cap);
        acc += std::log(std::log(b) / std::log(lo));
    }
    return acc;
}

int tail_count(const std::vector<Eigenform>& family, double sigma, double t, double V,
               const AfeOptions& opt) {
    AfeEvaluator eval(opt);
    const cdouble s(sigma, t);
    for (const auto& f : family) eval.prepare(f, s);
    const auto logs = parallel_table<double>(family.size(), [&](std::size_t i) {
        return std::log(std::abs(eval.value(family[i], s).value));
    });
    int count = 0;
    for (double lv : logs)
        if (lv >= V) ++count;
    return count;
}

double exp_majorant(std::complex<double> z, double ell) {
    if (std::ceil(ell) > 1e4)
        throw std::range_error("exp_majorant: ceil(ell) capped at 10^4");
    const std::complex<double> e = truncated_exp(ell, 0.5 * z);
    return std::norm(e);
}

} // namespace lmoment
