// Batch front door: generate or ingest coefficient files, run the
// verification suites, evaluate L-values, and drive the moment and
// window-classification experiments.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lmoment/arith.hpp"
#include "lmoment/forms.hpp"
#include "lmoment/harper.hpp"
#include "lmoment/lfun.hpp"
#include "lmoment/moments.hpp"
#include "lmoment/parallel.hpp"
#include "lmoment/petersson.hpp"
#include "lmoment/report.hpp"
#include "lmoment/verify.hpp"

namespace {

using namespace lmoment;

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

void apply_threads(int flag_threads) {
    if (const char* env = std::getenv("LMOMENT_THREADS"))
        set_threads(std::atoi(env));
    else if (flag_threads > 0)
        set_threads(flag_threads);
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::domain_error("cannot open output path: " + path);
    return file;
}

std::vector<Eigenform> collect_family(const std::vector<std::string>& paths,
                                      const std::string& builtin_set, std::size_t n_max) {
    std::vector<Eigenform> family;
    if (!builtin_set.empty()) {
        for (const auto& id : builtin_ids()) {
            const bool level1 = id.rfind("level1", 0) == 0 || id == "delta12";
            if (builtin_set == "all" || (builtin_set == "level1" && level1) ||
                (builtin_set == "level11" && !level1))
                family.push_back(builtin_form(id, n_max));
        }
        if (family.empty()) throw std::domain_error("unknown builtin set: " + builtin_set);
    }
    for (const auto& p : paths) {
        if (!std::filesystem::exists(p))
            throw std::domain_error("family file not found: " + p);
        family.push_back(load_coefficients(p));
    }
    if (family.empty()) throw std::domain_error("no family given: use --forms or --builtin-set");
    return family;
}

struct SharedFlags {
    std::string out;
    std::string format = "json";
    int threads = 0;
    std::uint64_t seed = 1;
    double slack_C = 5.0;
    double T = 1.0;
};

void add_shared(CLI::App* cmd, SharedFlags& fl) {
    cmd->add_option("--out", fl.out, "output path (default: stdout)");
    cmd->add_option("--format", fl.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--threads", fl.threads, "worker threads (LMOMENT_THREADS overrides)");
    cmd->add_option("--seed", fl.seed, "seed for sampling probes");
    cmd->add_option("--slack-C", fl.slack_C, "slack constant for inequality checks");
    cmd->add_option("--T", fl.T, "ladder cutoff exponent");
}

int cmd_gen_forms(const std::string& id, std::size_t n_max, const SharedFlags& fl) {
    const Eigenform f = builtin_form(id, n_max);
    const std::string path = fl.out.empty() ? id + ".coef" : fl.out;
    write_coefficients_file(f, path);
    std::cout << "wrote " << path << " (" << f.n_max() << " coefficients)\n";
    return 0;
}

int cmd_verify(const std::string& suite, const std::vector<std::string>& paths,
               const std::string& builtin_set, std::size_t n_max, double x_top,
               const SharedFlags& fl) {
    std::vector<Eigenform> forms;
    try {
        forms = collect_family(paths, builtin_set.empty() && paths.empty() ? "all" : builtin_set,
                               n_max);
    } catch (const std::runtime_error& e) {
        // Ingestion rejections are verification failures, not usage errors.
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    }

    std::vector<SuiteResult> suites;
    const bool all = suite == "all";
    if (all || suite == "hecke") suites.push_back(hecke_suite(forms));
    if (all || suite == "deligne") suites.push_back(deligne_suite(forms));
    if (all || suite == "weil") suites.push_back(weil_suite(fl.seed));
    if (all || suite == "fe") suites.push_back(fe_suite(forms));
    if (all || suite == "mertens") {
        std::vector<double> xs = {1e3, 1e4, 1e5, 1e6};
        if (x_top > 0) xs.push_back(x_top);
        suites.push_back(mertens_suite(xs));
    }
    if (suites.empty()) throw std::domain_error("unknown suite: " + suite);

    std::ofstream file;
    write_json(suites, open_out(file, fl.out));
    bool ok = true;
    for (const auto& s : suites) {
        std::cout << (s.pass ? "pass" : "FAIL") << "  " << s.name << "  checks=" << s.checks
                  << "  worst_margin=" << fmt17(s.worst_margin) << "\n";
        ok = ok && s.pass;
    }
    return ok ? 0 : 1;
}

int cmd_lvalue(const std::string& id, const std::string& path, double sigma, double t,
               const std::string& method, std::size_t n_max, std::uint64_t p_max,
               const SharedFlags& fl) {
    Eigenform f;
    if (!path.empty()) {
        if (!std::filesystem::exists(path)) throw std::domain_error("form file not found: " + path);
        f = load_coefficients(path);
    } else {
        std::size_t need = n_max ? n_max : afe_required_terms(1, t);
        if (id.rfind("level11", 0) == 0) need = n_max ? n_max : afe_required_terms(11, t);
        f = builtin_form(id, need);
    }

    const cdouble s(sigma, t);
    LValue v;
    if (method == "afe") {
        v = afe_value(f, s);
    } else if (method == "dirichlet") {
        v = dirichlet_partial(f, s, n_max ? std::min(n_max, f.n_max()) : f.n_max());
    } else if (method == "euler") {
        const cdouble lg = euler_product_log(f, s, p_max ? p_max : f.n_max());
        v = LValue{s, std::exp(lg), LMethod::euler, 0.0};
    } else {
        throw std::domain_error("unknown method: " + method);
    }

    std::ofstream file;
    auto& os = open_out(file, fl.out);
    os << "{\"form\": \"" << json_escape(f.id) << "\", \"sigma\": " << fmt17(sigma)
       << ", \"t\": " << fmt17(t) << ", \"re\": " << fmt17(v.value.real())
       << ", \"im\": " << fmt17(v.value.imag()) << ", \"method\": \"" << method
       << "\", \"trunc_error\": " << fmt17(v.trunc_error) << "}\n";
    return 0;
}

int cmd_moment(const std::vector<std::string>& paths, const std::string& builtin_set,
               std::size_t n_max, const std::string& a_text, const std::string& t_text,
               double A, bool buckets, std::uint64_t config_n, const SharedFlags& fl) {
    const auto family = collect_family(paths, builtin_set, n_max);
    ShiftSpec spec;
    spec.a = parse_list(a_text);
    spec.t = parse_list(t_text);
    spec.A = A;

    auto report = shifted_moment(family, spec, builtin_set.empty() ? "files" : builtin_set);
    if (buckets) {
        const auto cfg = HarperConfig::make(config_n, fl.T, fl.slack_C);
        bucket_attribution(report, family, cfg);
    }

    std::ofstream file;
    auto& os = open_out(file, fl.out);
    if (fl.format == "csv")
        write_csv(report, os);
    else
        write_json(report, os);
    if (!report.failures.empty()) {
        for (const auto& msg : report.failures) std::cerr << "evaluation failed: " << msg << "\n";
        return 1;
    }
    return 0;
}

int cmd_harper(const std::vector<std::string>& paths, const std::string& builtin_set,
               std::size_t n_max, const std::string& a_text, const std::string& t_text,
               double A, std::uint64_t config_n, const SharedFlags& fl) {
    const auto family = collect_family(paths, builtin_set, n_max);
    ShiftSpec spec;
    spec.a = parse_list(a_text);
    spec.t = parse_list(t_text);
    spec.A = A;
    const auto cfg = HarperConfig::make(config_n, fl.T, fl.slack_C);

    std::ofstream file;
    auto& os = open_out(file, fl.out);
    os << "{\n  \"N\": " << cfg.N << ", \"T\": " << fmt17(cfg.T) << ", \"J\": " << cfg.J << ",\n";
    os << "  \"alphas\": [";
    for (unsigned i = 0; i <= cfg.J + 1; ++i) os << (i ? ", " : "") << fmt17(cfg.alpha(i));
    os << "],\n  \"window_mertens\": [";
    for (unsigned j = 0; j <= cfg.J; ++j) os << (j ? ", " : "") << fmt17(window_mertens(cfg, j));
    os << "],\n  \"forms\": [\n";

    const double x26 = std::max(4.0, std::pow(static_cast<double>(cfg.N), cfg.alpha(cfg.J)));
    for (std::size_t fi = 0; fi < family.size(); ++fi) {
        const auto& f = family[fi];
        const auto cls = classify(f, spec, cfg);
        os << "    {\"form_id\": \"" << json_escape(f.id) << "\", \"s_bucket\": "
           << cls.s_bucket.index << ", \"p_bucket\": "
           << (cls.p_bucket ? cls.p_bucket->index : -1) << ",\n     \"thresholds\": [";
        bool first = true;
        for (unsigned i = 1; i <= cfg.J; ++i) {
            for (unsigned l = i; l <= cfg.J; ++l) {
                const double mag = std::abs(window_polynomial(f, spec, cfg, i, l));
                const double thr = std::pow(cfg.alpha(i), -0.75);
                os << (first ? "" : ", ") << "{\"i\": " << i << ", \"l\": " << l
                   << ", \"value\": " << fmt17(mag) << ", \"threshold\": " << fmt17(thr)
                   << ", \"margin\": " << fmt17(thr - mag) << "}";
                first = false;
            }
        }
        os << "],\n     \"shifted_bound_margin\": ";
        double lhs = 0.0;
        for (std::size_t j = 0; j < spec.k(); ++j) {
            const auto lv = central_value(f, spec.t[j]);
            lhs += spec.a[j] * std::log(std::abs(lv.value));
        }
        const double rhs = grh_shifted_log_bound(f, spec, 0.5, x26, cfg);
        os << fmt17(rhs - lhs) << "}" << (fi + 1 < family.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    return 0;
}

int cmd_petersson(unsigned kappa, std::uint64_t N, std::uint64_t n, double Y,
                  std::uint64_t c_max, const std::vector<std::string>& paths,
                  const SharedFlags& fl) {
    if (c_max == 0) c_max = default_c_max(N, n, Y);
    const auto term = petersson_average(kappa, N, n, Y, c_max);

    std::ofstream file;
    auto& os = open_out(file, fl.out);
    os << "{\"kappa\": " << kappa << ", \"N\": " << N << ", \"n\": " << n
       << ", \"Y\": " << fmt17(Y) << ", \"c_max\": " << c_max
       << ", \"main_term\": " << fmt17(term.main_term)
       << ", \"kloosterman_tail\": " << fmt17(term.kloosterman_tail)
       << ", \"truncation_estimate\": " << fmt17(term.truncation_estimate);
    if (!paths.empty()) {
        std::vector<Eigenform> family;
        for (const auto& p : paths) {
            if (!std::filesystem::exists(p)) throw std::domain_error("family file not found: " + p);
            family.push_back(load_coefficients(p));
        }
        os << ", \"family_sum\": " << fmt17(family_eigenvalue_sum(family, n))
           << ", \"residual\": " << fmt17(petersson_residual(kappa, N, family, n, Y, c_max));
        const auto model = family_size_model(kappa, N);
        os << ", \"family_size_model\": " << fmt17(model.model)
           << ", \"family_size_band\": " << fmt17(model.band);
    }
    os << "}\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"modular L-function family toolkit"};
    app.require_subcommand(1);

    SharedFlags fl;

    // gen-forms
    auto* gen = app.add_subcommand("gen-forms", "write a builtin form as a coefficient file");
    std::string gen_id;
    std::size_t gen_nmax = 10000;
    gen->add_option("--id", gen_id, "builtin form id")->required();
    gen->add_option("--n-max", gen_nmax, "number of coefficients");
    add_shared(gen, fl);

    // verify
    auto* ver = app.add_subcommand("verify", "run the verification suites");
    std::string ver_suite = "all";
    std::vector<std::string> ver_forms;
    std::string ver_builtin;
    std::size_t ver_nmax = 10000;
    double ver_x = 0.0;
    ver->add_option("--suite", ver_suite, "all|hecke|deligne|weil|fe|mertens");
    ver->add_option("--forms", ver_forms, "coefficient files");
    ver->add_option("--builtin-set", ver_builtin, "level1|level11|all");
    ver->add_option("--n-max", ver_nmax, "builtin coefficient count");
    ver->add_option("--x", ver_x, "extra prime-sum evaluation point");
    add_shared(ver, fl);

    // lvalue
    auto* lv = app.add_subcommand("lvalue", "evaluate L(sigma + it, f)");
    std::string lv_id = "delta12", lv_form, lv_method = "afe";
    double lv_sigma = 0.5, lv_t = 0.0;
    std::size_t lv_nmax = 0;
    std::uint64_t lv_pmax = 0;
    lv->add_option("--id", lv_id, "builtin form id");
    lv->add_option("--form", lv_form, "coefficient file");
    lv->add_option("--sigma", lv_sigma, "real part");
    lv->add_option("--t", lv_t, "imaginary part");
    lv->add_option("--method", lv_method, "afe|dirichlet|euler");
    lv->add_option("--n-max", lv_nmax, "series length");
    lv->add_option("--p-max", lv_pmax, "prime cutoff for the euler method");
    add_shared(lv, fl);

    // moment
    auto* mo = app.add_subcommand("moment", "shifted moment over a family");
    std::vector<std::string> mo_forms;
    std::string mo_builtin, mo_a = "2", mo_t = "0";
    std::size_t mo_nmax = 2000;
    double mo_A = 1.0;
    bool mo_buckets = false;
    std::uint64_t mo_confn = 1000000;
    mo->add_option("--forms", mo_forms, "coefficient files");
    mo->add_option("--builtin-set", mo_builtin, "level1|level11|all");
    mo->add_option("--n-max", mo_nmax, "builtin coefficient count");
    mo->add_option("--a", mo_a, "comma-separated exponents");
    mo->add_option("--t", mo_t, "comma-separated shifts");
    mo->add_option("--A", mo_A, "shift growth exponent");
    mo->add_flag("--buckets", mo_buckets, "attach window-classification attribution");
    mo->add_option("--N-config", mo_confn, "ladder size parameter");
    add_shared(mo, fl);

    // harper
    auto* ha = app.add_subcommand("harper", "window classification report");
    std::vector<std::string> ha_forms;
    std::string ha_builtin, ha_a = "1,1", ha_t = "1,-1";
    std::size_t ha_nmax = 2000;
    double ha_A = 1.0;
    std::uint64_t ha_confn = 1000000;
    ha->add_option("--forms", ha_forms, "coefficient files");
    ha->add_option("--builtin-set", ha_builtin, "level1|level11|all");
    ha->add_option("--n-max", ha_nmax, "builtin coefficient count");
    ha->add_option("--a", ha_a, "comma-separated exponents");
    ha->add_option("--t", ha_t, "comma-separated shifts");
    ha->add_option("--A", ha_A, "shift growth exponent");
    ha->add_option("--N", ha_confn, "ladder size parameter (>= 100)");
    add_shared(ha, fl);

    // petersson
    auto* pe = app.add_subcommand("petersson", "averaged coefficient main term and tail");
    unsigned pe_kappa = 12;
    std::uint64_t pe_n = 1, pe_level = 11, pe_cmax = 0;
    double pe_y = 1.0;
    std::vector<std::string> pe_forms;
    pe->add_option("--kappa", pe_kappa, "weight");
    pe->add_option("--N", pe_level, "level (prime)");
    pe->add_option("--n", pe_n, "coefficient index");
    pe->add_option("--Y", pe_y, "square-detection cutoff");
    pe->add_option("--c-max", pe_cmax, "modulus truncation (0 = default)");
    pe->add_option("--forms", pe_forms, "family files for the empirical sum");
    add_shared(pe, fl);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        apply_threads(fl.threads);
        if (gen->parsed()) return cmd_gen_forms(gen_id, gen_nmax, fl);
        if (ver->parsed()) return cmd_verify(ver_suite, ver_forms, ver_builtin, ver_nmax, ver_x, fl);
        if (lv->parsed()) return cmd_lvalue(lv_id, lv_form, lv_sigma, lv_t, lv_method,
                                            lv_nmax, lv_pmax, fl);
        if (mo->parsed()) return cmd_moment(mo_forms, mo_builtin, mo_nmax, mo_a, mo_t, mo_A,
                                            mo_buckets, mo_confn, fl);
        if (ha->parsed()) return cmd_harper(ha_forms, ha_builtin, ha_nmax, ha_a, ha_t, ha_A,
                                            ha_confn, fl);
        if (pe->parsed()) return cmd_petersson(pe_kappa, pe_level, pe_n, pe_y, pe_cmax,
                                               pe_forms, fl);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
