#include "lmoment/verify.hpp"

#include <cmath>
#include <ostream>
#include <random>

#include "lmoment/arith.hpp"
#include "lmoment/lfun.hpp"
#include "lmoment/report.hpp"
#include "lmoment/special.hpp"

namespace lmoment {

void SuiteResult::add(CheckEntry e, bool keep) {
    e.margin = e.bound - e.value;
    e.pass = e.margin >= 0.0;
    ++checks;
    if (checks == 1 || e.margin < worst_margin) worst_margin = e.margin;
    if (!e.pass) pass = false;
    if (!e.pass || keep) entries.push_back(std::move(e));
}

SuiteResult hecke_suite(const std::vector<Eigenform>& forms, std::uint64_t mn_limit, double tol) {
    SuiteResult r;
    r.name = "hecke";
    for (const auto& f : forms) {
        double worst = 0.0;
        for (std::uint64_t m = 1; m <= mn_limit; ++m) {
            for (std::uint64_t n = 1; m * n <= mn_limit; ++n) {
                const double res = std::abs(f.coeff(m) * f.coeff(n) - hecke_product(f, m, n));
                worst = std::max(worst, res);
            }
        }
        r.add({f.id + " multiplicative residual (mn<=" + std::to_string(mn_limit) + ")",
               worst, tol, 0, true}, true);

        double worst_pow = 0.0;
        for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL}) {
            if (f.level % p == 0) continue;
            for (unsigned e = 1; e <= 5; ++e) {
                const double res =
                    std::abs(power_expansion(f, p, e) - std::pow(f.coeff(p), e));
                worst_pow = std::max(worst_pow, res);
            }
        }
        r.add({f.id + " power-expansion residual", worst_pow, tol, 0, true}, true);
    }
    return r;
}

SuiteResult deligne_suite(const std::vector<Eigenform>& forms, std::uint64_t limit,
                          unsigned frame_limit) {
    SuiteResult r;
    r.name = "deligne";
    for (const auto& f : forms) {
        const std::uint64_t n_hi = std::min<std::uint64_t>(limit, f.n_max());
        double worst = -1e9;  // max of |lambda(n)| - d(n)
        for (std::uint64_t n = 1; n <= n_hi; ++n)
            worst = std::max(worst, std::abs(f.coeff(n)) -
                                        static_cast<double>(divisor_count(n)));
        r.add({f.id + " divisor-bound excess (n<=" + std::to_string(n_hi) + ")",
               worst, 1e-9, 0, true}, true);

        double worst_frame = 0.0;
        for (std::uint64_t p : primes_up_to(71).primes) {
            if (f.level % p == 0) continue;
            const auto frame = prime_frame(f, p, frame_limit);
            for (double u : frame.values) worst_frame = std::max(worst_frame, std::abs(u));
        }
        r.add({f.id + " power-sum magnitude (l<=" + std::to_string(frame_limit) + ")",
               worst_frame, 2.0 + 1e-9, 0, true}, true);
    }
    return r;
}

SuiteResult weil_suite(std::uint64_t seed, std::size_t triples, std::uint64_t c_limit) {
    SuiteResult r;
    r.name = "weil";

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> mn_dist(-50, 50);
    std::uniform_int_distribution<std::uint64_t> c_dist(1, c_limit);
    double worst_imag = 0.0, worst_sym = 0.0, worst_phi = 0.0;
    for (std::size_t i = 0; i < triples; ++i) {
        const std::int64_t m = mn_dist(rng);
        const std::int64_t n = mn_dist(rng);
        const std::uint64_t c = c_dist(rng);
        const auto smn = kloosterman(m, n, c);
        const auto snm = kloosterman(n, m, c);
        worst_imag = std::max(worst_imag, std::max(smn.imag_residual, snm.imag_residual));
        worst_sym = std::max(worst_sym, std::abs(smn.value - snm.value));
        worst_phi = std::max(worst_phi,
                             std::abs(smn.value) - static_cast<double>(euler_phi(c)));
    }
    r.add({"imaginary residual over random triples", worst_imag, 1e-10, 0, true}, true);
    r.add({"symmetry |S(m,n,c)-S(n,m,c)|", worst_sym, 1e-9, 0, true}, true);
    r.add({"trivial bound excess |S|-phi(c)", worst_phi, 1e-9, 0, true}, true);

    double worst_weil = -1e9;
    for (std::uint64_t p : primes_up_to(101).primes) {
        const auto s = kloosterman(1, 1, p);
        worst_weil = std::max(worst_weil,
                              std::abs(s.value) - 2.0 * std::sqrt(static_cast<double>(p)));
    }
    r.add({"Weil excess |S(1,1,p)| - 2 sqrt(p), p <= 101", worst_weil, 0.0, 0, true}, true);

    double worst_bessel = 0.0;
    for (unsigned nu : {0u, 1u, 5u, 11u, 19u, 25u}) {
        for (double x : {0.5, 1.0, 2.0, 5.0, 8.0, nu * 0.5 + 1.0, nu + 5.0}) {
            const double a = bessel_j_series(nu, x);
            const double b = bessel_j_recurrence(nu, x);
            const double scale = std::max({std::abs(a), std::abs(b), 1e-12});
            worst_bessel = std::max(worst_bessel, std::abs(a - b) / scale);
        }
    }
    r.add({"Bessel series vs recurrence relative gap", worst_bessel, 1e-8, 0, true}, true);
    return r;
}

SuiteResult fe_suite(std::vector<Eigenform>& forms, double tol) {
    SuiteResult r;
    r.name = "functional-equation";
    for (auto& f : forms) {
        const double eps = root_number(f);
        r.add({f.id + " root-number deviation from +-1",
               std::abs(root_number_raw(f) - eps), 1e-6, 0, true}, true);

        double worst = 0.0;
        for (int k = 0; k <= 20; ++k) {
            const double t = -5.0 + 0.5 * k;
            const auto plus = completed_lambda(f, cdouble(0.5, t));
            const auto minus = completed_lambda(f, cdouble(0.5, -t));
            const double res = std::abs(plus.lambda_value - eps * minus.lambda_value) /
                               (1.0 + std::abs(plus.lambda_value));
            worst = std::max(worst, res);
        }
        r.add({f.id + " completed-function symmetry residual", worst, tol, 0, true}, true);
    }
    return r;
}

SuiteResult mertens_suite(const std::vector<double>& xs, double logp_const) {
    SuiteResult r;
    r.name = "mertens";
    double x_hi = 100.0;
    for (double x : xs) x_hi = std::max(x_hi, x);
    const auto table = primes_up_to(static_cast<std::uint64_t>(x_hi));
    const double b_est = mertens_constant_estimate();

    for (double x : xs) {
        const auto sums = mertens_sums(x, table);
        const double dev = std::abs(sums.recip_sum - std::log(std::log(x)) - b_est);
        r.add({"|sum 1/p - log log x - b| at x=" + std::to_string(static_cast<long long>(x)),
               dev, 5.0 / std::log(x), 0, true}, true);
        const double dev2 = std::abs(sums.logp_sum - std::log(x));
        r.add({"|sum log p/p - log x| at x=" + std::to_string(static_cast<long long>(x)),
               dev2, logp_const, 0, true}, true);
    }
    return r;
}

void write_json(const std::vector<SuiteResult>& suites, std::ostream& os) {
    os << "{\n  \"suites\": [\n";
    for (std::size_t i = 0; i < suites.size(); ++i) {
        const auto& s = suites[i];
        os << "    {\"name\": \"" << s.name << "\", \"pass\": " << (s.pass ? "true" : "false")
           << ", \"checks\": " << s.checks << ", \"worst_margin\": " << fmt17(s.worst_margin)
           << ", \"entries\": [\n";
        for (std::size_t j = 0; j < s.entries.size(); ++j) {
            const auto& e = s.entries[j];
            os << "      {\"label\": \"" << json_escape(e.label) << "\", \"value\": "
               << fmt17(e.value) << ", \"bound\": " << fmt17(e.bound)
               << ", \"margin\": " << fmt17(e.margin) << ", \"pass\": "
               << (e.pass ? "true" : "false") << "}"
               << (j + 1 < s.entries.size() ? "," : "") << "\n";
        }
        os << "    ]}" << (i + 1 < suites.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
}

} // namespace lmoment
