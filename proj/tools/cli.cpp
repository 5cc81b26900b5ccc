#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ergm/asymptotics.hpp"
#include "ergm/errors.hpp"
#include "ergm/exact_ensemble.hpp"
#include "ergm/phase_curve.hpp"
#include "ergm/sampler.hpp"
#include "ergm/special.hpp"
#include "ergm/verify.hpp"
#include "table.hpp"

namespace ergm::cli {

namespace {

// Shared by every subcommand; unused fields are ignored.
struct RunConfig {
    double beta1 = 0.0;
    double beta2 = 0.0;
    int p = 2;
    std::string n;
    std::string n_grid;
    int replicas = 10'000;
    std::string seed;
    unsigned threads = 0;
    std::string format = "csv";
    std::string out_path;
    std::optional<double> tol;
    double curve_tol = kDefaultCurveTol;
    double from = 0.0;
    double to = 0.0;
    double step = 0.1;
    bool quick = false;
    bool fault_gamma = false;
};

const std::vector<std::int64_t> kDefaultGrid = {100, 200, 400, 800, 1600, 3200};

// Gamma function with a wrong constant, for negative-control runs of verify.
double faulty_gamma(double x) { return gamma_fn(x) * (1.0 + 1e-6); }

std::int64_t parse_count(const std::string& token) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = first + token.size();
    while (first < last && *first == ' ') ++first;
    while (last > first && last[-1] == ' ') --last;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
        throw DomainError("cannot parse '" + token + "' as a node count");
    }
    if (!(v >= 1.0 && v <= 1e12) || v != std::floor(v)) {
        throw DomainError("node count '" + token + "' must be a positive integer");
    }
    return static_cast<std::int64_t>(v);
}

std::vector<std::int64_t> parse_grid(const std::string& list) {
    std::vector<std::int64_t> out;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_count(tok));
    if (out.empty()) {
        throw DomainError("--n-grid is empty");
    }
    return out;
}

std::vector<std::int64_t> resolve_ns(const RunConfig& cfg, const std::vector<std::int64_t>& fallback) {
    if (!cfg.n.empty() && !cfg.n_grid.empty()) {
        throw DomainError("give either --n or --n-grid, not both");
    }
    if (!cfg.n.empty()) return {parse_count(cfg.n)};
    if (!cfg.n_grid.empty()) return parse_grid(cfg.n_grid);
    if (fallback.empty()) {
        throw DomainError("one of --n or --n-grid is required");
    }
    return fallback;
}

std::uint64_t parse_seed(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used, 0);
        if (used != s.size() || s.front() == '-') throw std::invalid_argument(s);
        return v;
    } catch (const std::logic_error&) {
        throw DomainError(std::string("invalid ") + what + " '" + s + "'");
    }
}

std::uint64_t resolve_seed(const RunConfig& cfg) {
    if (!cfg.seed.empty()) return parse_seed(cfg.seed, "--seed");
    if (const char* env = std::getenv("ERGM_PHASE_SEED"); env && *env) {
        return parse_seed(env, "ERGM_PHASE_SEED");
    }
    return kDefaultSeed;
}

Cell opt_cell(const std::optional<double>& v) {
    return v ? Cell{*v} : Cell{};
}

Table cmd_free_energy(const RunConfig& cfg) {
    const ModelParams params(cfg.beta1, cfg.beta2, cfg.p);
    const std::vector<std::int64_t> ns = resolve_ns(cfg, {});
    const PhaseClassification regime = classify_point(params, cfg.curve_tol);
    Table t{{"n", "psi_n", "psi_limit", "gap", "bound"}, {}};
    for (std::int64_t n : ns) {
        const double nd = static_cast<double>(n);
        const double psi = psi_n(params, n);
        t.add({n, psi, regime.ell_value, std::abs(psi - regime.ell_value), std::log(nd) / nd});
    }
    return t;
}

Table cmd_classify(const RunConfig& cfg) {
    const ModelParams params(cfg.beta1, cfg.beta2, cfg.p);
    const RegimeLimits lim = limiting_values(params, cfg.curve_tol);
    const std::vector<double> xs = lim.regime.maximizers();
    Table t{{"beta1", "beta2", "p", "regime", "x1_star", "x2_star", "psi_limit", "var_edge_limit",
             "var_star_limit", "cov_limit", "scale_exponent", "edge_prob_limit", "alpha_mix"},
            {}};
    t.add({cfg.beta1, cfg.beta2, std::int64_t{cfg.p}, std::string(lim.regime.regime_name()), xs.at(0),
           xs.size() > 1 ? Cell{xs[1]} : Cell{}, lim.psi_limit, lim.var_edge, lim.var_star, lim.cov,
           lim.scale_exponent, lim.edge_prob, opt_cell(lim.alpha_mix)});
    return t;
}

Table cmd_curve(const RunConfig& cfg, std::ostream& err) {
    if (!(cfg.step > 0.0)) {
        throw DomainError("--step must be positive");
    }
    if (!(cfg.to < cfg.from)) {
        throw DomainError("--to must be below --from (the curve is traced toward -infinity)");
    }
    const CriticalPoint cp = critical_point(cfg.p);
    const double cutoff = cp.beta1c - kNearCriticalCutoff;
    double start = cfg.from;
    long skipped = 0;
    while (start >= cutoff) {
        start = cfg.from - static_cast<double>(++skipped) * cfg.step;
    }
    Table t{{"p", "beta1", "beta2", "x1_star", "x2_star", "q_prime", "residual"}, {}};
    if (skipped > 0) {
        err << "warning: no transition curve for beta1 >= " << cp.beta1c << " (p = " << cfg.p
            << "); skipped " << skipped << " point(s)\n";
    }
    if (start < cfg.to) return t;
    for (const CurvePoint& pt : trace_curve(cfg.p, start, cfg.to, cfg.step, cfg.tol.value_or(kDefaultCurveTol))) {
        t.add({std::int64_t{pt.p}, pt.beta1, pt.beta2, pt.x1_star, pt.x2_star, pt.q_prime, pt.residual});
    }
    return t;
}

Table cmd_scaling(const RunConfig& cfg) {
    const ModelParams params(cfg.beta1, cfg.beta2, cfg.p);
    const std::vector<std::int64_t> ns = resolve_ns(cfg, kDefaultGrid);
    if (cfg.replicas < 2) {
        throw DomainError("--replicas must be at least 2");
    }
    const std::vector<ScalingRecord> recs =
        scaling_study(params, ns, cfg.replicas, resolve_seed(cfg), cfg.threads);
    Table t{{"n", "scale_exponent",
             "exact_var_edge", "mc_var_edge", "mc_se_var_edge", "predicted_var_edge",
             "exact_var_star", "mc_var_star", "mc_se_var_star", "predicted_var_star",
             "exact_cov", "mc_cov", "mc_se_cov", "predicted_cov",
             "exact_edge_prob", "mc_edge_prob", "mc_se_edge_prob"},
            {}};
    for (const ScalingRecord& r : recs) {
        t.add({r.n, r.scale_exponent,
               r.exact.d2_beta1, r.mc.var_e_scaled, r.mc.se_var_e, r.predicted_var_edge,
               r.exact.d2_beta2, r.mc.var_s_scaled, r.mc.se_var_s, r.predicted_var_star,
               r.exact.d2_mixed, r.mc.cov_scaled, r.mc.se_cov, r.predicted_cov,
               r.exact.edge_prob, r.mc.edge_freq, r.mc.se_edge});
    }
    return t;
}

Table cmd_verify(const RunConfig& cfg, bool& all_passed) {
    VerifyOptions opts;
    opts.quick = cfg.quick;
    if (cfg.fault_gamma) opts.gamma = &faulty_gamma;
    Table t{{"check", "passed", "detail"}, {}};
    all_passed = true;
    for (const CheckResult& c : run_verification(opts)) {
        all_passed = all_passed && c.passed;
        t.add({c.name, c.passed, c.detail});
    }
    return t;
}

void add_params(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--beta1", cfg.beta1, "Edge parameter")->required();
    sub->add_option("--beta2", cfg.beta2, "p-star parameter")->required();
    sub->add_option("--p", cfg.p, "Star size (integer >= 2)")->capture_default_str();
}

void add_output(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out_path, "Write to this file (atomically) instead of stdout");
}

void add_grid(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--n", cfg.n, "Node count (scientific notation accepted)");
    sub->add_option("--n-grid", cfg.n_grid, "Comma-separated node counts, e.g. 1e3,1e4,1e5");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Exact and asymptotic computations for the directed edge / p-star random graph model",
                 "ergm_phase"};
    app.require_subcommand(1);

    CLI::App* fe = app.add_subcommand(
        "free-energy",
        "psi_n against its limit.\nCSV columns: n,psi_n,psi_limit,gap,bound  (bound = log(n)/n)");
    add_params(fe, cfg);
    add_grid(fe, cfg);
    fe->add_option("--curve-tol", cfg.curve_tol, "Regime detection tolerance")->capture_default_str();
    add_output(fe, cfg);

    CLI::App* cl = app.add_subcommand(
        "classify",
        "Regime and limiting values.\nCSV columns: beta1,beta2,p,regime,x1_star,x2_star,psi_limit,"
        "var_edge_limit,var_star_limit,cov_limit,scale_exponent,edge_prob_limit,alpha_mix");
    add_params(cl, cfg);
    cl->add_option("--curve-tol", cfg.curve_tol, "Regime detection tolerance")->capture_default_str();
    add_output(cl, cfg);

    CLI::App* cu = app.add_subcommand(
        "curve",
        "Trace the transition curve from --from down to --to.\n"
        "CSV columns: p,beta1,beta2,x1_star,x2_star,q_prime,residual");
    cu->add_option("--p", cfg.p, "Star size (integer >= 2)")->capture_default_str();
    cu->add_option("--from", cfg.from, "Starting beta1")->required();
    cu->add_option("--to", cfg.to, "Final beta1 (below --from)")->required();
    cu->add_option("--step", cfg.step, "Spacing in beta1")->capture_default_str();
    cu->add_option("--tol", cfg.tol, "Equal-height tolerance (default 1e-10)");
    add_output(cu, cfg);

    CLI::App* sc = app.add_subcommand(
        "scaling",
        "Exact, Monte Carlo and predicted n^2 Var / Cov over an n grid (default 100,...,3200).\n"
        "CSV columns: n,scale_exponent,\n"
        "exact_var_edge,mc_var_edge,mc_se_var_edge,predicted_var_edge,\n"
        "exact_var_star,mc_var_star,mc_se_var_star,predicted_var_star,\n"
        "exact_cov,mc_cov,mc_se_cov,predicted_cov,\n"
        "exact_edge_prob,mc_edge_prob,mc_se_edge_prob");
    add_params(sc, cfg);
    add_grid(sc, cfg);
    sc->add_option("--replicas", cfg.replicas, "Monte Carlo replicas per n")->capture_default_str();
    sc->add_option("--seed", cfg.seed, "RNG seed (overrides ERGM_PHASE_SEED; default 0x5EED)");
    sc->add_option("--threads", cfg.threads, "Worker threads, 0 = all cores (results do not depend on it)");
    add_output(sc, cfg);

    CLI::App* ve = app.add_subcommand("verify", "Run the invariant suite.\nCSV columns: check,passed,detail");
    ve->add_flag("--quick", cfg.quick, "Skip checks that need n >= 1e5");
    ve->add_flag("--inject-gamma-fault", cfg.fault_gamma)->group("");
    add_output(ve, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitBadArgs;
    }

    try {
        Table table;
        bool verified = true;
        if (fe->parsed()) {
            table = cmd_free_energy(cfg);
        } else if (cl->parsed()) {
            table = cmd_classify(cfg);
        } else if (cu->parsed()) {
            table = cmd_curve(cfg, err);
        } else if (sc->parsed()) {
            table = cmd_scaling(cfg);
        } else {
            table = cmd_verify(cfg, verified);
        }
        std::ostringstream buf;
        write_table(table, cfg.format == "json" ? Format::Json : Format::Csv, buf);
        if (cfg.out_path.empty()) {
            out << buf.str();
        } else {
            write_atomic(cfg.out_path, buf.str());
        }
        return verified ? kExitOk : kExitVerifyFailed;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadArgs;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const ResourceError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}

}  // namespace ergm::cli
