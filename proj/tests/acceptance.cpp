// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ergm/asymptotics.hpp"
#include "ergm/exact_ensemble.hpp"
#include "ergm/phase_curve.hpp"
#include "ergm/sampler.hpp"

using namespace ergm;

namespace {

constexpr double kOracleTol = 1e-10;
constexpr double kExactTol = 1e-12;
constexpr double kRateGrowth = 1.10;
constexpr double kOffCurveTol = 0.02;
constexpr double kCriticalTol = 0.10;
constexpr double kOnCurveTol = 0.05;
constexpr double kSymmetryTol = 1e-12;
constexpr double kEdgeTol = 1e-3;
constexpr double kLineTol = 1e-8;
constexpr double kSlopeFdTol = 1e-4;
constexpr double kLaplaceRegularTol = 1e-3;
constexpr double kLaplaceSingularTol = 1e-2;
constexpr double kMcSigmas = 4.0;
constexpr double kSlopeTol = 0.05;

struct Outcome {
    bool pass;
    std::string detail;
};

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

Outcome oracle_equivalence() {
    std::mt19937_64 gen(20240601);
    std::uniform_real_distribution<double> beta(-3.0, 3.0);
    std::uniform_int_distribution<int> ps(2, 3);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const ModelParams params(beta(gen), beta(gen), ps(gen));
        for (int n = 2; n <= 4; ++n) worst = std::max(worst, std::abs(psi_n(params, n) - brute_force_psi(params, n)));
    }
    return {worst < kOracleTol, "max |psi_n - brute force| = " + fmt(worst) + " over 150 cases"};
}

Outcome trivial_exactness() {
    const ModelParams zero(0, 0, 2);
    double psi_err = 0.0;
    double var_err = 0.0;
    for (std::int64_t n : {100LL, 10'000LL, 1'000'000LL}) {
        const ExactDerivatives d = exact_derivatives(zero, n);
        psi_err = std::max(psi_err, std::abs(d.psi - std::log(2.0)));
        var_err = std::max(var_err, std::abs(d.d2_beta1 - 0.25));
    }
    return {psi_err < kExactTol && var_err < kExactTol,
            "max |psi - log 2| = " + fmt(psi_err) + ", max |d2 - 1/4| = " + fmt(var_err)};
}

Outcome free_energy_rate() {
    const ModelParams params(-1.5, 1.5, 2);
    const double lim = classify_point(params).ell_value;
    std::vector<double> seq;
    for (std::int64_t n : {1000LL, 10'000LL, 100'000LL}) {
        const double nd = static_cast<double>(n);
        seq.push_back(nd * std::abs(psi_n(params, n) - lim) / std::log(nd));
    }
    bool ok = true;
    for (std::size_t k = 1; k < seq.size(); ++k) ok = ok && seq[k] <= kRateGrowth * seq[k - 1];
    return {ok, "n |psi_n - ell*| / log n = " + fmt(seq[0]) + ", " + fmt(seq[1]) + ", " + fmt(seq[2])};
}

Outcome off_curve_variance() {
    const ModelParams params(-1.5, 1.5, 2);
    const double lim = limiting_values(params).var_edge;
    std::vector<double> errs;
    for (std::int64_t n : {1000LL, 10'000LL, 100'000LL}) errs.push_back(rel(exact_derivatives(params, n).d2_beta1, lim));
    const bool ok = errs[2] < kOffCurveTol && errs[1] < errs[0] && errs[2] < errs[1];
    return {ok, "rel err " + fmt(errs[0]) + ", " + fmt(errs[1]) + ", " + fmt(errs[2]) + " at n = 1e3, 1e4, 1e5"};
}

Outcome critical_variance() {
    const ModelParams params(-2, 2, 2);
    const double k = std::tgamma(0.75) / std::tgamma(0.25) * 2 * std::sqrt(6.0) / std::pow(2.0, 2.5);
    const double lim = limiting_values(params).var_edge;
    std::vector<double> errs;
    for (std::int64_t n : {10'000LL, 100'000LL, 1'000'000LL}) {
        errs.push_back(rel(exact_derivatives(params, n).d2_beta1 / std::sqrt(static_cast<double>(n)), k));
    }
    const bool ok = rel(lim, k) < 1e-12 && errs[2] < kCriticalTol && errs[1] < errs[0] && errs[2] < errs[1];
    return {ok, "constant " + fmt(k) + ", rel err " + fmt(errs[0]) + ", " + fmt(errs[1]) + ", " + fmt(errs[2]) +
                    " at n = 1e4, 1e5, 1e6"};
}

Outcome on_curve_variance() {
    const ModelParams params(-2.5, 2.5, 2);
    const RegimeLimits lim = limiting_values(params);
    if (!lim.regime.on_curve()) return {false, "point not classified on the curve"};
    const double n = 1e5;
    const ExactDerivatives d = exact_derivatives(params, 100'000);
    const double e1 = rel(d.d2_beta1 / n, lim.var_edge);
    const double e2 = rel(d.d2_beta2 / n, lim.var_star);
    const double e3 = rel(d.d2_mixed / n, lim.cov);
    return {std::max({e1, e2, e3}) < kOnCurveTol,
            "rel err edge " + fmt(e1) + ", star " + fmt(e2) + ", mixed " + fmt(e3) + " at n = 1e5"};
}

Outcome edge_probability() {
    const ModelParams sym(-2.5, 2.5, 2);
    double worst = 0.0;
    for (std::int64_t n : {2LL, 3LL, 10LL, 101LL, 1000LL, 10'000LL, 100'000LL, 1'000'000LL}) {
        worst = std::max(worst, std::abs(edge_probability_exact(sym, n) - 0.5));
    }
    const RegimeLimits lim = limiting_values(sym);
    const bool mix_ok = lim.alpha_mix && std::abs(*lim.alpha_mix - 0.5) < 1e-12 && std::abs(lim.edge_prob - 0.5) < 1e-12;
    const ModelParams off(-1.0, 1.5, 2);
    const double x = classify_point(off).maximizers().at(0);
    const double gap = std::abs(edge_probability_exact(off, 100'000) - x);
    return {worst < kSymmetryTol && mix_ok && gap < kEdgeTol,
            "max |P - 1/2| on the curve = " + fmt(worst) + ", mixture limit " + fmt(lim.edge_prob) +
                ", |P - x*| off the curve = " + fmt(gap)};
}

Outcome curve_tracer() {
    double line = 0.0;
    for (const CurvePoint& pt : trace_curve(2, -2.2, -5.0, 0.05)) line = std::max(line, std::abs(pt.beta2 + pt.beta1));

    const double step = 0.05;
    const auto pts = trace_curve(3, -1.0, -3.0, step);
    double fd_err = 0.0;
    bool in_range = true;
    bool monotone = true;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        in_range = in_range && pts[k].q_prime > -1.0 && pts[k].q_prime < -0.75;
        if (k > 0) monotone = monotone && pts[k].q_prime <= pts[k - 1].q_prime;
        if (k > 0 && k + 1 < pts.size()) {
            const double fd = (pts[k - 1].beta2 - pts[k + 1].beta2) / (2 * step);
            fd_err = std::max(fd_err, std::abs(fd - pts[k].q_prime));
        }
    }
    return {line < kLineTol && fd_err < kSlopeFdTol && in_range && monotone,
            "p=2 max |q + beta1| = " + fmt(line) + "; p=3 max |q' - fd| = " + fmt(fd_err) +
                (in_range ? ", q' in (-1, -3/4)" : ", q' out of range") +
                (monotone ? ", q' monotone" : ", q' not monotone")};
}

Outcome laplace_vs_quadrature() {
    auto err = [](const ModelParams& params) {
        return std::abs(std::expm1(laplace_expand(params, 1000, 0).log() - quadrature_integral(params, 1000, 0)));
    };
    const double reg = err(ModelParams(0, 0, 2));
    const double crit = err(ModelParams(-2, 2, 2));
    const double on = err(ModelParams(-2.5, 2.5, 2));
    return {reg < kLaplaceRegularTol && crit < kLaplaceSingularTol && on < kLaplaceSingularTol,
            "rel err regular " + fmt(reg) + ", critical " + fmt(crit) + ", on-curve " + fmt(on)};
}

Outcome monte_carlo() {
    const std::vector<std::int64_t> grid = {100, 200, 400, 800, 1600, 3200};
    struct Case {
        ModelParams params;
        double slope;
    };
    const Case cases[] = {{ModelParams(-1.5, 1.5, 2), 0.0}, {ModelParams(-2, 2, 2), 0.5}, {ModelParams(-2.5, 2.5, 2), 1.0}};
    bool ok = true;
    std::ostringstream detail;
    detail << "slopes";
    double worst_z = 0.0;
    for (const Case& c : cases) {
        const auto recs = scaling_study(c.params, grid, 10'000, kDefaultSeed);
        std::vector<double> xs, ys;
        for (const ScalingRecord& r : recs) {
            xs.push_back(static_cast<double>(r.n));
            ys.push_back(r.exact.d2_beta1);
            const double z1 = std::abs(r.mc.var_e_scaled - r.exact.d2_beta1) / r.mc.se_var_e;
            const double z2 = std::abs(r.mc.var_s_scaled - r.exact.d2_beta2) / r.mc.se_var_s;
            worst_z = std::max({worst_z, z1, z2});
        }
        const double slope = loglog_slope(xs, ys);
        ok = ok && std::abs(slope - c.slope) < kSlopeTol;
        detail << ' ' << fmt(slope);
    }
    ok = ok && worst_z < kMcSigmas;
    detail << "; worst |MC - exact| = " << fmt(worst_z) << " SE";
    return {ok, detail.str()};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "oracle equivalence", 10, oracle_equivalence},
        {2, "trivial exactness", 5, trivial_exactness},
        {3, "free energy rate", 5, free_energy_rate},
        {4, "off-curve variance limit", 5, off_curve_variance},
        {5, "critical variance scaling", 30, critical_variance},
        {6, "on-curve variance limits", 10, on_curve_variance},
        {7, "edge probability", 5, edge_probability},
        {8, "transition curve tracer", 20, curve_tracer},
        {9, "laplace expansion vs quadrature", 5, laplace_vs_quadrature},
        {10, "monte carlo scaling", 600, monte_carlo},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = o.pass && secs < c.budget_s;
        if (!pass) ++failed;
        std::printf("criterion %2d %s  %s: %s [%.2f s, budget %.0f s]\n", c.id, pass ? "PASS" : "FAIL", c.name,
                    o.detail.c_str(), secs, c.budget_s);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
