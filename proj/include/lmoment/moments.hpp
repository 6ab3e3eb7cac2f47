#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lmoment/forms.hpp"
#include "lmoment/harper.hpp"

namespace lmoment {

struct PerFormEntry {
    std::string form_id;
    std::optional<Classification> bucket;
    double log_product = 0.0;  // sum_j a_j log |L(1/2 + i t_j, f)|
    double product = 0.0;      // exp(log_product)
};

struct MomentReport {
    std::string family_id;
    std::uint64_t N = 1;       // normalization divisor (the family level)
    unsigned kappa = 0;        // 0 when the family mixes weights
    ShiftSpec spec;
    std::vector<PerFormEntry> per_form;
    double total = 0.0;
    double normalized = 0.0;   // total / N
    std::map<std::string, double> bucket_totals;
    double surrogate_total = 0.0;  // truncated-exponential majorant aggregate
    std::vector<std::string> failures;
};

// Per-form products are computed in log space and exponentiated once; the
// family reduction runs in family order regardless of thread count.  Forms
// whose evaluation fails are listed in failures and skipped from the totals.
MomentReport shifted_moment(const std::vector<Eigenform>& family, const ShiftSpec& spec,
                            const std::string& family_id = "", const AfeOptions& opt = {});

// Serial reference path, bit-identical to shifted_moment by construction.
MomentReport shifted_moment_serial(const std::vector<Eigenform>& family, const ShiftSpec& spec,
                                   const std::string& family_id = "", const AfeOptions& opt = {});

// Labels every form by its window classification, fills bucket_totals, and
// recomputes total as the ordered sum over buckets so that the bucket totals
// add up to total exactly.  surrogate_total aggregates, per form,
//   exp((A+1) a / alpha_j) * prod_{i<=j} |E_ell(window_polynomial/2)|^2
// with ell = e^2 a alpha_i^{-3/4} and j the form's s-bucket.
void bucket_attribution(MomentReport& report, const std::vector<Eigenform>& family,
                        const HarperConfig& cfg);

// JSON object mirroring the report fields; numbers carry 17 significant digits.
void write_json(const MomentReport& report, std::ostream& os);

// Flat table: form_id,bucket_kind,bucket_index,product
// followed by the trailer row TOTAL,<total>,<normalized>.
void write_csv(const MomentReport& report, std::ostream& os);

} // namespace lmoment
