#include "ergm/verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "ergm/errors.hpp"
#include "ergm/exact_ensemble.hpp"
#include "ergm/phase_curve.hpp"
#include "ergm/special.hpp"

namespace ergm {

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
    const GammaFn gamma = opts.gamma ? opts.gamma : &gamma_fn;
    std::vector<CheckResult> out;
    auto check = [&](std::string name, const std::function<std::pair<bool, std::string>()>& body) {
        try {
            auto [ok, detail] = body();
            out.push_back({std::move(name), ok, std::move(detail)});
        } catch (const std::exception& e) {
            out.push_back({std::move(name), false, std::string("exception: ") + e.what()});
        }
    };

    check("gamma identities", [&] {
        const double e1 = rel_err(gamma(0.5), std::sqrt(std::numbers::pi));
        const double e2 = rel_err(gamma(0.25) * gamma(0.75), std::numbers::pi * std::numbers::sqrt2);
        return std::pair{e1 < 1e-12 && e2 < 1e-12, "rel err " + fmt(std::max(e1, e2))};
    });

    check("brute-force oracle", [&] {
        std::mt19937_64 gen(7);
        std::uniform_real_distribution<double> beta(-3.0, 3.0);
        double worst = 0.0;
        for (int trial = 0; trial < 12; ++trial) {
            const ModelParams params(beta(gen), beta(gen), 2 + trial % 2);
            for (int n = 2; n <= 4; ++n) {
                worst = std::max(worst, std::abs(psi_n(params, n) - brute_force_psi(params, n)));
            }
        }
        return std::pair{worst < 1e-10, "max |diff| " + fmt(worst)};
    });

    check("fair-coin exactness", [&] {
        const ModelParams zero(0.0, 0.0, 2);
        double worst = 0.0;
        for (std::int64_t n : {100LL, 10'000LL, 1'000'000LL}) {
            if (opts.quick && n >= 100'000) continue;
            const ExactDerivatives d = exact_derivatives(zero, n);
            worst = std::max({worst, std::abs(d.psi - std::numbers::ln2), std::abs(d.d2_beta1 - 0.25)});
        }
        return std::pair{worst < 1e-12, "max err " + fmt(worst)};
    });

    check("critical point derivatives", [&] {
        double worst = 0.0;
        for (int p = 2; p <= 5; ++p) {
            const CriticalPoint cp = critical_point(p);
            const ModelParams params(cp.beta1c, cp.beta2c, p);
            const double x = params.critical_x();
            const double want4 = -std::pow(p, 5) / ((p - 1.0) * (p - 1.0));
            worst = std::max({worst, std::abs(ell_deriv(x, params, 1)),
                              std::abs(ell_deriv(x, params, 2)), std::abs(ell_deriv(x, params, 3)),
                              rel_err(ell_deriv(x, params, 4), want4)});
        }
        return std::pair{worst < 1e-10, "max residual " + fmt(worst)};
    });

    check("p=2 transition line", [&] {
        double worst = 0.0;
        for (double b1 : {-2.5, -4.0}) {
            worst = std::max(worst, std::abs(solve_q(b1, 2).beta2 + b1));
        }
        return std::pair{worst < 1e-8, "max |q + beta1| " + fmt(worst)};
    });

    check("Taylor d0 identities", [&] {
        double worst = 0.0;
        for (double c : {0.1, 0.37, 0.5, 0.8}) {
            for (int p : {2, 3, 4}) {
                const auto f0 = taylor_coeffs_f(c, 0)[0];
                const auto f1 = taylor_coeffs_f(c, 1)[0];
                const auto fp = taylor_coeffs_f(c, p)[0];
                worst = std::max({worst, rel_err(taylor_coeffs_f(c, 2)[0] * f0, f1 * f1),
                                  rel_err(taylor_coeffs_f(c, 2 * p)[0] * f0, fp * fp),
                                  rel_err(taylor_coeffs_f(c, p + 1)[0] * f0, f1 * fp)});
            }
        }
        return std::pair{worst < 1e-12, "max rel err " + fmt(worst)};
    });

    check("Laplace vs quadrature (regular n=1e3)", [&] {
        const ModelParams params(0.0, 0.0, 2);
        const PhaseClassification regime = classify_point(params);
        const double lap = laplace_expand(regime, params, 1000, 0, gamma).log();
        const double quad = quadrature_integral(params, 1000, 0);
        const double err = std::abs(std::expm1(lap - quad));
        return std::pair{err < 1e-3, "rel err " + fmt(err)};
    });

    check("on-curve rank-one limits", [&] {
        const RegimeLimits lim = limiting_values(ModelParams(-2.5, 2.5, 2), kDefaultCurveTol, gamma);
        const double err = rel_err(lim.cov * lim.cov, lim.var_edge * lim.var_star);
        return std::pair{lim.regime.on_curve() && err < 1e-10, "rel err " + fmt(err)};
    });

    check("critical constants (p=2)", [&] {
        const CriticalPoint cp = critical_point(2);
        const RegimeLimits lim = limiting_values(ModelParams(cp.beta1c, cp.beta2c, 2), kDefaultCurveTol, gamma);
        const LaplaceCoefficients lc =
            laplace_coefficients(0.5, ModelParams(cp.beta1c, cp.beta2c, 2), Expansion::Quartic, gamma);
        const double ratio = (*lc.gamma)[3] / (*lc.gamma)[1];
        const double err = std::max({rel_err(lim.var_star, lim.var_edge), rel_err(lim.cov, lim.var_edge),
                                     rel_err(ratio, lim.var_edge)});
        return std::pair{lim.regime.critical() && err < 1e-12, "rel err " + fmt(err)};
    });

    check("p=2 edge symmetry", [&] {
        double worst = 0.0;
        for (std::int64_t n : {10LL, 101LL, 1000LL}) {
            worst = std::max(worst, std::abs(edge_probability_exact(ModelParams(-2.5, 2.5, 2), n) - 0.5));
        }
        return std::pair{worst < 1e-12, "max |p - 1/2| " + fmt(worst)};
    });

    if (!opts.quick) {
        check("free energy rate (n up to 1e5)", [&] {
            const ModelParams params(-1.5, 1.5, 2);
            const double lim = classify_point(params).ell_value;
            double prev = 0.0;
            bool ok = true;
            for (std::int64_t n : {1000LL, 10'000LL, 100'000LL}) {
                const double nd = static_cast<double>(n);
                const double v = nd * std::abs(psi_n(params, n) - lim) / std::log(nd);
                if (prev > 0.0 && v > 1.1 * prev) ok = false;
                prev = v;
            }
            return std::pair{ok, "last " + fmt(prev)};
        });
        check("off-curve variance at n=1e5", [&] {
            const ModelParams params(-1.5, 1.5, 2);
            const RegimeLimits lim = limiting_values(params, kDefaultCurveTol, gamma);
            const double err = rel_err(exact_derivatives(params, 100'000).d2_beta1, lim.var_edge);
            return std::pair{err < 0.02, "rel err " + fmt(err)};
        });
        check("critical variance at n=1e6", [&] {
            const CriticalPoint cp = critical_point(2);
            const ModelParams params(cp.beta1c, cp.beta2c, 2);
            const RegimeLimits lim = limiting_values(params, kDefaultCurveTol, gamma);
            const double scaled = exact_derivatives(params, 1'000'000).d2_beta1 / 1000.0;
            const double err = rel_err(scaled, lim.var_edge);
            return std::pair{err < 0.10, "rel err " + fmt(err)};
        });
    }
    return out;
}

}  // namespace ergm
