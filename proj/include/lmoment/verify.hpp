#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lmoment/forms.hpp"

namespace lmoment {

struct CheckEntry {
    std::string label;
    double value = 0.0;   // measured quantity
    double bound = 0.0;   // what it must stay below / equal
    double margin = 0.0;  // bound - value (negative = violation)
    bool pass = true;
};

struct SuiteResult {
    std::string name;
    bool pass = true;
    std::size_t checks = 0;
    double worst_margin = 0.0;
    std::vector<CheckEntry> entries;  // violations always kept; extremes kept for context

    void add(CheckEntry e, bool keep = false);
};

// Multiplicative relations |lambda(m)lambda(n) - sum_d lambda(mn/d^2)| and the
// binomial power expansions, at tolerance tol.
SuiteResult hecke_suite(const std::vector<Eigenform>& forms, std::uint64_t mn_limit = 200,
                        double tol = 1e-9);

// |lambda(n)| <= d(n) for n <= limit and |alpha_p^l + beta_p^l| <= 2 for
// p coprime to the level, l <= frame_limit.
SuiteResult deligne_suite(const std::vector<Eigenform>& forms, std::uint64_t limit = 10000,
                          unsigned frame_limit = 20);

// Kloosterman sums: realness to 1e-10, symmetry in (m,n) on seeded random
// triples, |S(1,1,p)| <= 2 sqrt(p) at all primes p <= 101, and the Bessel
// series/recurrence cross-check at 1e-8.
SuiteResult weil_suite(std::uint64_t seed = 1, std::size_t triples = 200,
                       std::uint64_t c_limit = 10000);

// Completed-function symmetry |Lambda(1/2+it) - eps Lambda(1/2-it)| on a
// 21-point grid in [-5,5], relative tolerance 1e-6, plus root numbers within
// 1e-6 of +-1.
SuiteResult fe_suite(std::vector<Eigenform>& forms, double tol = 1e-6);

// Prime sums against log log x + b and log x, with slack 5/log x for the
// reciprocal sum and a single constant for the log-weighted sum.
SuiteResult mertens_suite(const std::vector<double>& xs = {1e3, 1e4, 1e5, 1e6},
                          double logp_const = 2.0);

void write_json(const std::vector<SuiteResult>& suites, std::ostream& os);

} // namespace lmoment
