#include "lmoment/lfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "detail.hpp"
#include "lmoment/arith.hpp"
#include "lmoment/parallel.hpp"
#include "lmoment/special.hpp"

namespace lmoment {

namespace {

constexpr double kPi = std::numbers::pi;

// log of the completed-function prefactor (sqrt(N)/2pi)^z Gamma(z + (kappa-1)/2).
cdouble log_gamma_factor(cdouble z, std::uint64_t level, unsigned weight) {
    const double half = (static_cast<double>(weight) - 1.0) / 2.0;
    const double cond = std::log(std::sqrt(static_cast<double>(level)) / (2.0 * kPi));
    return z * cond + log_gamma(z + half);
}

std::size_t terms_for(std::uint64_t level, double t, double scale) {
    const double m = scale * std::sqrt(static_cast<double>(level)) * (1.0 + std::abs(t));
    return std::max<std::size_t>(32, static_cast<std::size_t>(std::ceil(m)));
}

} // namespace

std::size_t afe_required_terms(std::uint64_t level, double t, double scale) {
    return terms_for(level, t, scale);
}

LValue dirichlet_partial(const Eigenform& f, cdouble s, std::size_t n_max) {
    if (s.real() <= 1.0)
        throw std::domain_error("dirichlet_partial: requires Re s > 1");
    if (n_max < 1 || n_max > f.n_max())
        throw std::out_of_range("dirichlet_partial: n_max outside stored range");

    const auto terms = parallel_table<cdouble>(n_max, [&](std::size_t i) {
        const double n = static_cast<double>(i + 1);
        return f.lambda[i + 1] * std::exp(-s * std::log(n));
    });
    cdouble acc = 0.0;
    for (const cdouble& v : terms) acc += v;  // ascending n, any thread count

    LValue out;
    out.s = s;
    out.value = acc;
    out.method = LMethod::dirichlet;
    out.trunc_error = detail::divisor_tail_bound(s.real(), static_cast<double>(n_max));
    return out;
}

cdouble euler_product_log(const Eigenform& f, cdouble s, std::uint64_t p_max) {
    if (s.real() <= 1.0)
        throw std::domain_error("euler_product_log: requires Re s > 1");

    if (p_max < 2) return 0.0;
    const auto table = primes_up_to(p_max);
    const double sigma = s.real();
    cdouble acc = 0.0;
    for (std::uint64_t p : table.primes) {
        const double lp = std::log(static_cast<double>(p));
        const unsigned l_max = std::max(1u, static_cast<unsigned>(std::ceil(42.0 / (sigma * lp))));
        const auto frame = prime_frame(f, p, l_max);
        for (unsigned l = 1; l <= l_max; ++l)
            acc += frame.values[l] / static_cast<double>(l) *
                   std::exp(-static_cast<double>(l) * s * lp);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Smoothed approximate functional equation.
//
// For the completed function Lambda(z) = gamma(z) L(z) and an entire even
// cutoff G with G(0) = 1 (here exp(a w^2)),
//   Lambda(s) = I(s) + eps I(1-s),
//   I(z) = (1/2 pi i) int_{(c)} Lambda(z + w) G(w) dw / w,
// by shifting the contour over the single pole at w = 0 and applying the
// functional equation to the left half.  Expanding L in its Dirichlet series
// and dividing by gamma(s) gives
//   L(s) = sum_n lambda(n) n^{-s} V_s(n) + eps X_s sum_n lambda(n) n^{-(1-s)} V_{1-s}(n),
//   V_z(n) = (1/2 pi) int (gamma(z+w)/gamma(z)) (2 pi n / sqrt(N))^{-w} G(w)/w dy,
//   X_s = gamma(1-s)/gamma(s),
// with w = c + iy.  The integrand is entire and Gaussian-damped, so the
// trapezoidal rule converges spectrally in the step.
// ---------------------------------------------------------------------------

struct AfeEvaluator::Table {
    cdouble s;
    std::size_t terms = 0;
    std::vector<cdouble> w1;  // n^{-s} V_s(n), index n
    std::vector<cdouble> w2;  // n^{-(1-s)} V_{1-s}(n)
    cdouble ratio;            // X_s
    double tail = 0.0;        // bound on both dropped n-tails
};

namespace {

double contour_for(cdouble z, unsigned weight) {
    const double half = (static_cast<double>(weight) - 1.0) / 2.0;
    double c = std::max(1.5, 1.75 - z.real());
    c = std::max(c, 0.3 - z.real() - half);
    return c;
}

// V_z(n) n^{-z} for n = 1..terms, plus the tail coefficient on the shifted
// line used for the truncation bound.
struct CutoffColumn {
    std::vector<cdouble> weighted;  // index n
    double tail_coeff = 0.0;        // A_R with V(n) <= A_R u_n^{-R}
    double tail_exponent = 0.0;     // R
};

CutoffColumn cutoff_column(cdouble z, std::uint64_t level, unsigned weight,
                           std::size_t terms, const AfeOptions& opt) {
    const double a = opt.gauss_a;
    const double h = opt.step;
    const double y_max = std::sqrt(46.0 / a);
    const std::size_t half_nodes = static_cast<std::size_t>(std::ceil(y_max / h));
    const std::size_t nodes = 2 * half_nodes + 1;

    const cdouble lg_z = log_gamma_factor(z, level, weight);
    const double c = contour_for(z, weight);

    std::vector<cdouble> node_weight(nodes);
    for (std::size_t j = 0; j < nodes; ++j) {
        const double y = (static_cast<double>(j) - static_cast<double>(half_nodes)) * h;
        const cdouble w(c, y);
        const cdouble g = std::exp(a * w * w);
        node_weight[j] = (h / (2.0 * kPi)) * g / w * std::exp(log_gamma_factor(z + w, level, weight) - lg_z);
    }

    const double log_u0 = std::log(2.0 * kPi / std::sqrt(static_cast<double>(level)));

    CutoffColumn col;
    col.weighted = parallel_table<cdouble>(terms, [&](std::size_t i) {
        const double n = static_cast<double>(i + 1);
        const double lu = log_u0 + std::log(n);
        // V(n) = u^{-c} sum_j node_weight[j] e^{-i y_j lu}, by phase rotation.
        const cdouble step = std::polar(1.0, -h * lu);
        cdouble phase = std::polar(1.0, static_cast<double>(half_nodes) * h * lu);
        cdouble acc = 0.0;
        for (std::size_t j = 0; j < nodes; ++j) {
            acc += node_weight[j] * phase;
            phase *= step;
        }
        const cdouble v = acc * std::exp(-c * lu);
        return v * std::exp(-z * std::log(n));
    });

    // Same integral on the line Re w = R bounds |V(n)| by A_R u^{-R}.
    const double r = c + opt.tail_shift;
    double a_r = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
        const double y = (static_cast<double>(j) - static_cast<double>(half_nodes)) * h;
        const cdouble w(r, y);
        a_r += std::abs((h / (2.0 * kPi)) * std::exp(a * w * w) / w *
                        std::exp(log_gamma_factor(z + w, level, weight) - lg_z));
    }
    col.tail_coeff = a_r;
    col.tail_exponent = r;
    return col;
}

} // namespace

std::shared_ptr<const AfeEvaluator::Table> AfeEvaluator::table_for(const Eigenform& f,
                                                                   cdouble s) const {
    const auto key = std::make_tuple(f.level, f.weight, s.real(), s.imag());
    const auto it = cache_.find(key);
    if (it == cache_.end()) return nullptr;
    return it->second;
}

void AfeEvaluator::prepare(const Eigenform& f, cdouble s) {
    if (table_for(f, s)) return;

    auto table = std::make_shared<Table>();
    table->s = s;
    table->terms = terms_for(f.level, s.imag(), opt_.terms_scale);
    if (f.n_max() < table->terms)
        throw std::out_of_range("afe: form " + f.id + " needs n_max >= " +
                                std::to_string(table->terms) + " coefficients, has " +
                                std::to_string(f.n_max()));

    const cdouble z2 = 1.0 - s;
    auto col1 = cutoff_column(s, f.level, f.weight, table->terms, opt_);
    auto col2 = cutoff_column(z2, f.level, f.weight, table->terms, opt_);
    table->w1 = std::move(col1.weighted);
    table->w2 = std::move(col2.weighted);
    table->ratio = std::exp(log_gamma_factor(z2, f.level, f.weight) -
                            log_gamma_factor(s, f.level, f.weight));

    const double m = static_cast<double>(table->terms);
    const double uc = 2.0 * kPi / std::sqrt(static_cast<double>(f.level));
    const auto tail_of = [&](const CutoffColumn& col, double re_z) {
        return col.tail_coeff * std::pow(uc, -col.tail_exponent) *
               detail::divisor_tail_bound(re_z + col.tail_exponent, m);
    };
    table->tail = tail_of(col1, s.real()) +
                  std::abs(table->ratio) * tail_of(col2, z2.real()) + 1e-12;

    cache_.emplace(std::make_tuple(f.level, f.weight, s.real(), s.imag()),
                   std::move(table));
}

LValue AfeEvaluator::value(const Eigenform& f, cdouble s) const {
    const auto table = table_for(f, s);
    if (!table) throw std::logic_error("AfeEvaluator::value before prepare");
    if (f.n_max() < table->terms)
        throw std::out_of_range("afe: form " + f.id + " needs n_max >= " +
                                std::to_string(table->terms));

    cdouble s1 = 0.0, s2 = 0.0;
    for (std::size_t n = 1; n <= table->terms; ++n) {
        s1 += f.lambda[n] * table->w1[n - 1];
        s2 += f.lambda[n] * table->w2[n - 1];
    }
    const double eps = root_number(f);

    LValue out;
    out.s = s;
    out.value = s1 + eps * table->ratio * s2;
    out.method = LMethod::afe;
    out.trunc_error = table->tail;
    return out;
}

LValue afe_value(const Eigenform& f, cdouble s, const AfeOptions& opt) {
    AfeEvaluator eval(opt);
    eval.prepare(f, s);
    return eval.value(f, s);
}

LValue central_value(const Eigenform& f, double t, const AfeOptions& opt) {
    if (std::abs(t) > 1e4) throw std::domain_error("central_value: |t| capped at 10^4");
    return afe_value(f, cdouble(0.5, t), opt);
}

CompletedValue completed_lambda(const Eigenform& f, cdouble s) {
    const cdouble lg = log_gamma_factor(s, f.level, f.weight);  // throws at Gamma poles
    LValue l;
    if (s.real() > 1.6)
        l = dirichlet_partial(f, s, f.n_max());
    else
        l = afe_value(f, s);
    return CompletedValue{s, std::exp(lg) * l.value};
}

} // namespace lmoment
