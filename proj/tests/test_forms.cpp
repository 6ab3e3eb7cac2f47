#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lmoment/arith.hpp"
#include "lmoment/forms.hpp"
#include "oracles.hpp"

using namespace lmoment;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("weight-12 coefficients match the dense product oracle") {
    const auto f = builtin_form(BuiltinId::delta12, 60);
    const auto ref = oracle::eta_power_coeffs<std::int64_t>(24, 60);  // a(n) = ref[n-1]
    for (std::size_t n = 1; n <= 60; ++n) {
        const double expect = static_cast<double>(ref[n - 1]) /
                              std::pow(static_cast<double>(n), 5.5);
        CHECK(f.coeff(n) == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(f.coeff(1) == 1.0);
    // a(2) = -24 from the oracle
    CHECK(ref[1] == -24);
    CHECK(f.coeff(2) == doctest::Approx(-24.0 / std::pow(2.0, 5.5)).epsilon(1e-14));
    CHECK(f.coeff(2) == doctest::Approx(-0.53033008588991064).epsilon(1e-12));
}

TEST_CASE("level-11 coefficients match the dense product oracle") {
    const auto f = builtin_form(BuiltinId::level11_weight2, 120);
    const auto ref = oracle::eta11_squared_coeffs(120);
    for (std::size_t n = 1; n <= 120; ++n)
        CHECK(f.coeff(n) ==
              doctest::Approx(static_cast<double>(ref[n - 1]) / std::sqrt(static_cast<double>(n)))
                  .epsilon(1e-12));
    CHECK(ref[1] == -2);  // a(2) = -2
    CHECK(f.coeff(2) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
    CHECK(f.coeff(11) == doctest::Approx(1.0 / std::sqrt(11.0)).epsilon(1e-14));
}

TEST_CASE("higher level-1 weights match the dense product oracle") {
    for (unsigned kappa : {16u, 18u, 20u, 22u, 26u}) {
        const std::string id = "level1_weight" + std::to_string(kappa);
        const auto f = builtin_form(id, 40);
        const auto ref = oracle::level1_coeffs_naive(kappa, 40);
        const double half = (kappa - 1.0) / 2.0;
        for (std::size_t n = 1; n <= 40; ++n) {
            const double expect = oracle::to_double(ref[n]) / std::pow(static_cast<double>(n), half);
            CHECK(f.coeff(n) == doctest::Approx(expect).epsilon(1e-11));
        }
    }
}

TEST_CASE("hybrid generation agrees with the full convolution past the switch") {
    // the full-convolution region ends at 3000; check freshly-convolved values
    // beyond it for a weight where the oracle fits a 128-bit integer
    const auto f = builtin_form(BuiltinId::level1_weight16, 3400);
    const auto ref = oracle::level1_coeffs_naive(16, 3400);
    for (std::size_t n : {3001ULL, 3120ULL, 3259ULL, 3307ULL, 3399ULL}) {
        const double expect = oracle::to_double(ref[n]) / std::pow(static_cast<double>(n), 7.5);
        CHECK(f.coeff(n) == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("parallel and serial generators agree bit for bit") {
    for (auto id : {BuiltinId::delta12, BuiltinId::level1_weight16, BuiltinId::level11_weight2}) {
        const auto a = builtin_form(id, 2500);
        const auto b = builtin_form_serial(id, 2500);
        REQUIRE(a.lambda.size() == b.lambda.size());
        for (std::size_t n = 1; n < a.lambda.size(); ++n) CHECK(a.lambda[n] == b.lambda[n]);
    }
}

TEST_CASE("multiplicative relations hold on all builtins") {
    for (const auto& id : builtin_ids()) {
        const auto f = builtin_form(id, 220);
        for (std::uint64_t m = 1; m <= 200; ++m)
            for (std::uint64_t n = 1; m * n <= 200; ++n)
                CHECK(std::abs(f.coeff(m) * f.coeff(n) - hecke_product(f, m, n)) <= 1e-9);
    }
}

TEST_CASE("hecke_product pinned cases") {
    const auto f = builtin_form(BuiltinId::delta12, 200);
    CHECK(hecke_product(f, 2, 3) == doctest::Approx(f.coeff(6)).epsilon(1e-14));
    CHECK(hecke_product(f, 2, 2) == doctest::Approx(1.0 + f.coeff(4)).epsilon(1e-13));
    CHECK(hecke_product(f, 4, 2) == doctest::Approx(f.coeff(8) + f.coeff(2)).epsilon(1e-13));
    CHECK_THROWS_AS(hecke_product(f, 100, 3), std::out_of_range);

    // at the ramified prime the divisor d = p is excluded from the sum
    const auto g = builtin_form(BuiltinId::level11_weight2, 200);
    CHECK(hecke_product(g, 11, 11) == doctest::Approx(g.coeff(121)).epsilon(1e-13));
    CHECK(g.coeff(11) * g.coeff(11) == doctest::Approx(g.coeff(121)).epsilon(1e-12));
}

TEST_CASE("power expansion") {
    const auto f = builtin_form(BuiltinId::delta12, 3000);
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL}) {
        CHECK(power_expansion(f, p, 1) == f.coeff(p));
        CHECK(power_expansion(f, p, 2) ==
              doctest::Approx(1.0 + f.coeff(p * p)).epsilon(1e-13));
        for (unsigned e = 1; e <= 5; ++e)
            CHECK(power_expansion(f, p, e) ==
                  doctest::Approx(std::pow(f.coeff(p), e)).epsilon(1e-9));
    }
    CHECK(std::abs(power_expansion(f, 2, 4) - std::pow(f.coeff(2), 4.0)) < 1e-9);

    const auto g = builtin_form(BuiltinId::level11_weight2, 100);
    CHECK_THROWS_AS(power_expansion(g, 11, 2), std::domain_error);
}

TEST_CASE("even power expansions read only even prime powers") {
    auto f = builtin_form(BuiltinId::delta12, 300);
    const double base = power_expansion(f, 2, 4);
    // poison the odd prime-power entries; an even expansion must not care
    f.lambda[2] = 99.0;
    f.lambda[8] = -99.0;
    f.lambda[32] = 7.0;
    CHECK(power_expansion(f, 2, 4) == base);
}

TEST_CASE("prime frame recurrence") {
    const auto f = builtin_form(BuiltinId::delta12, 400);
    const auto frame = prime_frame(f, 3, 20);
    CHECK(frame.values[0] == 2.0);
    CHECK(frame.values[1] == f.coeff(3));
    CHECK(frame.values[2] == doctest::Approx(f.coeff(9) - 1.0).epsilon(1e-12));
    for (double u : frame.values) CHECK(std::abs(u) <= 2.0 + 1e-12);

    // ramified prime: u_l = lambda(11)^l for l >= 1
    const auto g = builtin_form(BuiltinId::level11_weight2, 130);
    const auto rf = prime_frame(g, 11, 5);
    CHECK(rf.values[0] == 2.0);
    for (unsigned l = 1; l <= 5; ++l)
        CHECK(rf.values[l] == doctest::Approx(std::pow(g.coeff(11), l)).epsilon(1e-12));
}

TEST_CASE("root numbers") {
    auto d = builtin_form(BuiltinId::delta12, 10);
    CHECK(root_number(d) == 1.0);
    auto l11 = builtin_form(BuiltinId::level11_weight2, 20);
    CHECK(root_number(l11) == 1.0);
    CHECK(std::abs(root_number_raw(l11) - 1.0) < 1e-12);

    // i^kappa alternates with kappa mod 4 at level 1
    CHECK(root_number(builtin_form(BuiltinId::level1_weight16, 4)) == 1.0);
    CHECK(root_number(builtin_form(BuiltinId::level1_weight18, 4)) == -1.0);
    CHECK(root_number(builtin_form(BuiltinId::level1_weight20, 4)) == 1.0);
    CHECK(root_number(builtin_form(BuiltinId::level1_weight22, 4)) == -1.0);
    CHECK(root_number(builtin_form(BuiltinId::level1_weight26, 4)) == -1.0);

    // synthetic prime level with lambda(N) = -N^{-1/2} and kappa = 2 mod 4
    Eigenform s;
    s.id = "sign-check";
    s.level = 13;
    s.weight = 2;
    s.lambda.assign(14, 0.0);
    s.lambda[1] = 1.0;
    s.lambda[13] = -1.0 / std::sqrt(13.0);
    CHECK(root_number(s) == -1.0);

    Eigenform bad = s;
    bad.eps = 0.0;         // drop the cached sign
    bad.lambda[13] = 0.5;  // |eps| far from 1
    CHECK_THROWS_AS(root_number(bad), std::runtime_error);
}

TEST_CASE("coefficient file round trip") {
    const auto f = builtin_form(BuiltinId::level11_weight2, 500);
    const auto path = temp_path("lmoment_roundtrip.coef");
    write_coefficients_file(f, path);
    const auto g = load_coefficients(path);
    CHECK(g.level == 11);
    CHECK(g.weight == 2);
    REQUIRE(g.n_max() == 500);
    for (std::size_t n = 1; n <= 500; ++n) CHECK(g.lambda[n] == f.lambda[n]);  // %.17g round trip
    std::filesystem::remove(path);
}

TEST_CASE("ingestion rejects invalid files") {
    const auto path = temp_path("lmoment_bad.coef");
    const auto write = [&](const std::string& body) {
        std::ofstream os(path);
        os << body;
    };

    write("#meta level=1 weight=12 count=2 normalized=true\n1,0.9\n2,0.1\n");
    CHECK_THROWS_WITH_AS(load_coefficients(path),
                         doctest::Contains("lambda(1)"), std::runtime_error);

    write("#meta level=1 weight=12 count=2 normalized=true\n1,1.0\n2,2.5\n");
    CHECK_THROWS_WITH_AS(load_coefficients(path),
                         doctest::Contains("divisor bound"), std::runtime_error);

    write("#meta level=1 weight=12 count=3 normalized=true\n1,1.0\n3,0.1\n2,0.1\n");
    CHECK_THROWS_AS(load_coefficients(path), std::runtime_error);  // out of order

    write("#meta level=1 weight=12 count=3 normalized=true\n1,1.0\n2,0.1\n");
    CHECK_THROWS_WITH_AS(load_coefficients(path),
                         doctest::Contains("missing"), std::runtime_error);

    write("#badheader\n1,1.0\n");
    CHECK_THROWS_WITH_AS(load_coefficients(path),
                         doctest::Contains("#meta"), std::runtime_error);

    // multiplicative violation: lambda(6) inconsistent with lambda(2) lambda(3)
    write("#meta level=1 weight=12 count=6 normalized=true\n"
          "1,1.0\n2,0.5\n3,0.25\n4,-0.75\n5,0.1\n6,0.4\n");
    CHECK_THROWS_WITH_AS(load_coefficients(path),
                         doctest::Contains("multiplicative"), std::runtime_error);
    std::filesystem::remove(path);
}

TEST_CASE("synthetic forms are deterministic and pass validation") {
    const auto a = synthetic_form(10007, 2, 12000, 42, "synthetic-42");
    const auto b = synthetic_form(10007, 2, 12000, 42, "synthetic-42");
    REQUIRE(a.lambda.size() == b.lambda.size());
    for (std::size_t n = 1; n <= a.n_max(); ++n) CHECK(a.lambda[n] == b.lambda[n]);

    CHECK_NOTHROW(validate_form(a, 10000));
    CHECK(std::abs(std::abs(a.coeff(10007)) - 1.0 / std::sqrt(10007.0)) < 1e-15);

    const auto c = synthetic_form(10007, 2, 2000, 43, "synthetic-43");
    CHECK(c.coeff(2) != a.coeff(2));  // different seed, different angles
}

TEST_CASE("coefficient access is bounds checked") {
    const auto f = builtin_form(BuiltinId::delta12, 10);
    CHECK_THROWS_AS(f.coeff(0), std::out_of_range);
    CHECK_THROWS_AS(f.coeff(11), std::out_of_range);
    CHECK_THROWS_AS(builtin_form("nonsense", 10), std::domain_error);
    CHECK_THROWS_AS(builtin_form(BuiltinId::delta12, 0), std::domain_error);
}
