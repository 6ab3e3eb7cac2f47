#include "lmoment/moments.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "lmoment/parallel.hpp"
#include "lmoment/report.hpp"

namespace lmoment {

namespace {

struct FormOutcome {
    bool ok = true;
    double log_product = 0.0;
    std::string error;
};

MomentReport moment_impl(const std::vector<Eigenform>& family, const ShiftSpec& spec,
                         const std::string& family_id, const AfeOptions& opt, bool parallel) {
    MomentReport report;
    report.family_id = family_id;
    report.spec = spec;
    if (family.empty()) {
        report.N = 1;
        spec.validate(1);
        return report;
    }

    report.N = family.front().level;
    report.kappa = family.front().weight;
    for (const auto& f : family) {
        if (f.level != report.N) throw std::domain_error("shifted_moment: family mixes levels");
        if (f.weight != report.kappa) report.kappa = 0;
    }
    spec.validate(report.N);

    AfeEvaluator eval(opt);
    for (std::size_t j = 0; j < spec.k(); ++j)
        for (const auto& f : family) eval.prepare(f, cdouble(0.5, spec.t[j]));

    const auto outcome = [&](std::size_t i) {
        FormOutcome o;
        try {
            double acc = 0.0;
            for (std::size_t j = 0; j < spec.k(); ++j) {
                const auto lv = eval.value(family[i], cdouble(0.5, spec.t[j]));
                acc += spec.a[j] * std::log(std::abs(lv.value));
            }
            o.log_product = acc;
        } catch (const std::exception& e) {
            o.ok = false;
            o.error = e.what();
        }
        return o;
    };
    const auto outcomes = parallel ? parallel_table<FormOutcome>(family.size(), outcome)
                                   : serial_table<FormOutcome>(family.size(), outcome);

    double total = 0.0;
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (!outcomes[i].ok) {
            report.failures.push_back(family[i].id + ": " + outcomes[i].error);
            continue;
        }
        PerFormEntry entry;
        entry.form_id = family[i].id;
        entry.log_product = outcomes[i].log_product;
        entry.product = std::exp(outcomes[i].log_product);
        total += entry.product;
        report.per_form.push_back(std::move(entry));
    }
    report.total = total;
    report.normalized = total / static_cast<double>(report.N);
    return report;
}

} // namespace

MomentReport shifted_moment(const std::vector<Eigenform>& family, const ShiftSpec& spec,
                            const std::string& family_id, const AfeOptions& opt) {
    return moment_impl(family, spec, family_id, opt, true);
}

MomentReport shifted_moment_serial(const std::vector<Eigenform>& family, const ShiftSpec& spec,
                                   const std::string& family_id, const AfeOptions& opt) {
    return moment_impl(family, spec, family_id, opt, false);
}

void bucket_attribution(MomentReport& report, const std::vector<Eigenform>& family,
                        const HarperConfig& cfg) {
    // Index the family by id; failed forms have no per_form entry.
    std::map<std::string, const Eigenform*> by_id;
    for (const auto& f : family) by_id[f.id] = &f;

    const double a_total = report.spec.a_total();
    report.bucket_totals.clear();
    double surrogate = 0.0;
    for (auto& entry : report.per_form) {
        const auto it = by_id.find(entry.form_id);
        if (it == by_id.end())
            throw std::domain_error("bucket_attribution: form " + entry.form_id +
                                    " missing from family");
        const Eigenform& f = *it->second;
        entry.bucket = classify(f, report.spec, cfg);

        const unsigned j = static_cast<unsigned>(entry.bucket->s_bucket.index);
        double log_factor = (report.spec.A + 1.0) * a_total / cfg.alpha(j);
        double majorant = std::exp(log_factor);
        for (unsigned i = 1; i <= j; ++i) {
            const double ell = std::exp(2.0) * a_total * std::pow(cfg.alpha(i), -0.75);
            majorant *= exp_majorant(window_polynomial(f, report.spec, cfg, i, j), ell);
        }
        surrogate += majorant;
    }
    report.surrogate_total = surrogate;

    // Ordered per-bucket sums; total is then the ordered sum over buckets so
    // the partition identity holds exactly.
    for (const auto& entry : report.per_form)
        report.bucket_totals[to_string(entry.bucket->s_bucket)] += entry.product;
    double total = 0.0;
    for (const auto& [label, value] : report.bucket_totals) total += value;
    report.total = total;
    report.normalized = total / static_cast<double>(report.N);
}

void write_json(const MomentReport& report, std::ostream& os) {
    os << "{\n";
    os << "  \"family_id\": \"" << json_escape(report.family_id) << "\",\n";
    os << "  \"N\": " << report.N << ",\n";
    os << "  \"kappa\": " << report.kappa << ",\n";
    os << "  \"spec\": {\"k\": " << report.spec.k() << ", \"a\": [";
    for (std::size_t i = 0; i < report.spec.a.size(); ++i)
        os << (i ? ", " : "") << fmt17(report.spec.a[i]);
    os << "], \"t\": [";
    for (std::size_t i = 0; i < report.spec.t.size(); ++i)
        os << (i ? ", " : "") << fmt17(report.spec.t[i]);
    os << "], \"A\": " << fmt17(report.spec.A) << "},\n";
    os << "  \"per_form\": [\n";
    for (std::size_t i = 0; i < report.per_form.size(); ++i) {
        const auto& e = report.per_form[i];
        os << "    {\"form_id\": \"" << json_escape(e.form_id) << "\", ";
        if (e.bucket) {
            os << "\"bucket_kind\": \"S\", \"bucket_index\": " << e.bucket->s_bucket.index << ", ";
            os << "\"p_bucket_index\": " << (e.bucket->p_bucket ? e.bucket->p_bucket->index : -1)
               << ", ";
        } else {
            os << "\"bucket_kind\": \"none\", \"bucket_index\": -1, \"p_bucket_index\": -1, ";
        }
        os << "\"product\": " << fmt17(e.product) << ", \"log_product\": " << fmt17(e.log_product)
           << "}" << (i + 1 < report.per_form.size() ? "," : "") << "\n";
    }
    os << "  ],\n";
    os << "  \"total\": " << fmt17(report.total) << ",\n";
    os << "  \"normalized\": " << fmt17(report.normalized) << ",\n";
    os << "  \"bucket_totals\": {";
    bool first = true;
    for (const auto& [label, value] : report.bucket_totals) {
        os << (first ? "" : ", ") << "\"" << label << "\": " << fmt17(value);
        first = false;
    }
    os << "},\n";
    os << "  \"surrogate_total\": " << fmt17(report.surrogate_total) << ",\n";
    os << "  \"failures\": [";
    for (std::size_t i = 0; i < report.failures.size(); ++i)
        os << (i ? ", " : "") << "\"" << json_escape(report.failures[i]) << "\"";
    os << "]\n";
    os << "}\n";
}

void write_csv(const MomentReport& report, std::ostream& os) {
    os << "form_id,bucket_kind,bucket_index,product\n";
    for (const auto& e : report.per_form) {
        if (e.bucket)
            os << e.form_id << ",S," << e.bucket->s_bucket.index << "," << fmt17(e.product) << "\n";
        else
            os << e.form_id << ",none,-1," << fmt17(e.product) << "\n";
    }
    os << "TOTAL," << fmt17(report.total) << "," << fmt17(report.normalized) << "\n";
}

} // namespace lmoment
