#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "lmoment/arith.hpp"
#include "lmoment/special.hpp"
#include "oracles.hpp"

using namespace lmoment;
using cplx = std::complex<double>;

TEST_CASE("kloosterman pinned values") {
    CHECK(kloosterman(0, 0, 6).value == doctest::Approx(2.0).epsilon(1e-12));  // phi(6)
    CHECK(kloosterman(1, 1, 3).value == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(kloosterman(1, 1, 2).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(kloosterman(5, 7, 1).value == 1.0);
    CHECK_THROWS_AS(kloosterman(1, 1, 20000000), std::domain_error);
}

TEST_CASE("kloosterman against the scanning oracle") {
    for (std::uint64_t c : {2ULL, 3ULL, 5ULL, 12ULL, 35ULL, 97ULL}) {
        for (std::int64_t m : {-3LL, 0LL, 1LL, 4LL}) {
            for (std::int64_t n : {-1LL, 2LL, 9LL}) {
                const auto got = kloosterman(m, n, c);
                const auto ref = oracle::kloosterman_naive(m, n, c);
                CHECK(std::abs(got.value - ref.real()) < 1e-10);
                CHECK(std::abs(ref.imag()) < 1e-10);
            }
        }
    }
}

TEST_CASE("kloosterman symmetry, realness, trivial and Weil bounds") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> mn(-50, 50);
    std::uniform_int_distribution<std::uint64_t> cs(1, 10000);
    for (int i = 0; i < 200; ++i) {
        const auto m = mn(rng), n = mn(rng);
        const auto c = cs(rng);
        const auto a = kloosterman(m, n, c);
        const auto b = kloosterman(n, m, c);
        CHECK(std::abs(a.value - b.value) < 1e-9);
        CHECK(a.imag_residual < 1e-10);
        CHECK(std::abs(a.value) <= static_cast<double>(euler_phi(c)) + 1e-9);
    }
    for (std::uint64_t p : primes_up_to(101).primes)
        CHECK(std::abs(kloosterman(1, 1, p).value) <= 2.0 * std::sqrt(static_cast<double>(p)));
}

TEST_CASE("bessel pinned values and cross-validation") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(11, 0.0) == 0.0);
    CHECK(bessel_j(1, 0.1) ==
          doctest::Approx(oracle::bessel_series_naive(1, 0.1)).epsilon(1e-12));

    // series vs Miller recurrence on the overlap region
    for (unsigned nu : {0u, 1u, 3u, 5u, 11u, 19u, 25u}) {
        for (double x : {0.5, 1.0, 2.0, 5.0, 8.0, nu * 0.5 + 1.0, nu + 5.0}) {
            const double a = bessel_j_series(nu, x);
            const double b = bessel_j_recurrence(nu, x);
            CHECK(std::abs(a - b) <= 1e-8 * std::max({std::abs(a), std::abs(b), 1e-10}));
        }
    }
    // Miller vs asymptotics near the switch
    for (unsigned nu : {0u, 1u, 5u, 11u}) {
        for (double x : {1200.0, 2500.0, 10000.0}) {
            const double a = bessel_j_recurrence(nu, x);
            const double b = bessel_j_asymptotic(nu, x);
            CHECK(std::abs(a - b) < 1e-9);
        }
    }
    // library dispatch against the standard library on a mixed grid
    for (unsigned nu : {0u, 1u, 2u, 7u, 11u, 25u}) {
        for (double x : {0.1, 1.0, 9.5, 33.0, 120.0, 4000.0}) {
            const double mine = bessel_j(nu, x);
            const double ref = std::cyl_bessel_j(static_cast<double>(nu), x);
            CHECK(std::abs(mine - ref) <= 1e-8 * std::max(1.0, std::abs(ref)));
        }
    }
    CHECK(std::isfinite(bessel_j(11, 1e6)));
    CHECK_THROWS_AS(bessel_j(201, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_j(0, -0.5), std::domain_error);
}

TEST_CASE("truncated exponential") {
    CHECK(truncated_exp(0.0, cplx(5.0, 0.0)) == cplx(1.0, 0.0));
    CHECK(truncated_exp(2.0, cplx(1.0, 0.0)).real() == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(std::abs(truncated_exp(30.0, cplx(1.0, 0.0)) - std::exp(1.0)) < 1e-12);
    CHECK(std::abs(truncated_exp(12.3, cplx(0.5, 0.5)) -
                   oracle::truncated_exp_naive(13, cplx(0.5, 0.5))) < 1e-14);
    CHECK_THROWS_AS(truncated_exp(20000.0, cplx(0.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(truncated_exp(-1.0, cplx(0.0, 0.0)), std::domain_error);
}

TEST_CASE("truncated exponential converges monotonically for |z| <= ell/2") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> re(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        const cplx z(4.0 * re(rng), 4.0 * re(rng));
        const double noise = 1e-14 * std::abs(std::exp(z));  // double rounding floor
        double prev = 1e300;
        for (double ell = std::max(10.0, 2.0 * std::abs(z)); ell <= 40.0; ell += 2.0) {
            const double err = std::abs(truncated_exp(ell, z) - std::exp(z));
            CHECK(err <= prev + noise);
            prev = err;
        }
    }
}

TEST_CASE("squared truncated exponential majorizes the exponential near the origin") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    int failures = 0;
    for (double ell : {10.0, 20.0, 50.0}) {
        for (int rep = 0; rep < 500; ++rep) {
            const double r = std::abs(unit(rng)) * ell / 10.0;
            const double phase = unit(rng) * 3.14159265358979;
            const cplx z = std::polar(r, phase);
            const double lhs = std::exp(2.0 * z.real());
            const double rhs = 1.01 * std::norm(truncated_exp(ell, z)) * std::exp(0.01);
            if (lhs > rhs) ++failures;
        }
    }
    CHECK(failures == 0);
}

TEST_CASE("complex log gamma") {
    CHECK(std::abs(log_gamma(cplx(1.0, 0.0))) < 1e-14);
    CHECK(std::abs(log_gamma(cplx(5.0, 0.0)) - std::log(24.0)) < 1e-13);
    CHECK(std::abs(log_gamma(cplx(0.5, 0.0)) - 0.5 * std::log(3.14159265358979323846)) < 1e-13);

    for (double x : {0.3, 0.9, 1.7, 3.2, 7.5, 12.0, 30.0})
        CHECK(std::abs(log_gamma(cplx(x, 0.0)).real() - std::lgamma(x)) < 1e-12 * std::max(1.0, std::abs(std::lgamma(x))));

    // conjugate symmetry and the recurrence Gamma(z+1) = z Gamma(z)
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> re(0.2, 20.0), im(-10.0, 10.0);
    for (int i = 0; i < 100; ++i) {
        const cplx z(re(rng), im(rng));
        const cplx a = log_gamma(z);
        const cplx b = log_gamma(std::conj(z));
        CHECK(std::abs(a - std::conj(b)) < 1e-11 * std::max(1.0, std::abs(a)));
        const cplx ratio = std::exp(log_gamma(z + 1.0) - a);
        CHECK(std::abs(ratio / z - 1.0) < 1e-11);
    }

    // reflection: Gamma(-1/2) = -2 sqrt(pi)
    const cplx g = std::exp(log_gamma(cplx(-0.5, 0.0)));
    CHECK(g.real() == doctest::Approx(-2.0 * std::sqrt(3.14159265358979323846)).epsilon(1e-11));
    CHECK(std::abs(g.imag()) < 1e-10);

    CHECK_THROWS_AS(log_gamma(cplx(0.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(log_gamma(cplx(-3.0, 0.0)), std::domain_error);
}
