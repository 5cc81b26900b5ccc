#include "ergm/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ergm/errors.hpp"
#include "ergm/phase_curve.hpp"
#include "ergm/special.hpp"

namespace ergm {

namespace {

constexpr double kSingularCoeff = 1e-14;

GammaFn resolve(GammaFn g) { return g ? g : &gamma_fn; }

// Generalized binomial coefficients C(a, 0..2).
std::array<double, 3> gen_binom(double a) { return {1.0, a, 0.5 * a * (a - 1.0)}; }

}  // namespace

std::array<double, 3> taylor_coeffs_f(double c, int m) {
    if (!(c > 0.0 && c < 1.0)) {
        throw DomainError("taylor_coeffs_f: c must lie in (0,1)");
    }
    if (m < 0) {
        throw DomainError("taylor_coeffs_f: m must be >= 0");
    }
    // f(x) = x^a (1-x)^(-1/2), a = m - 1/2; expand each factor about c and
    // multiply the series.
    const double a = m - 0.5;
    const std::array<double, 3> ca = gen_binom(a);
    const std::array<double, 3> cb = gen_binom(-0.5);
    const double base_x = std::pow(c, a);
    const double base_y = 1.0 / std::sqrt(1.0 - c);
    std::array<double, 3> xs{};
    std::array<double, 3> ys{};
    for (int j = 0; j < 3; ++j) {
        xs[j] = base_x * ca[j] * std::pow(c, -j);
        ys[j] = base_y * cb[j] * std::pow(-1.0 / (1.0 - c), j);
    }
    return {xs[0] * ys[0], xs[0] * ys[1] + xs[1] * ys[0],
            xs[0] * ys[2] + xs[1] * ys[1] + xs[2] * ys[0]};
}

double LaplaceCoefficients::lambda(int m) const {
    if (!alpha) {
        throw SingularCoefficientError("lambda: b2 vanishes, no quadratic expansion");
    }
    const auto& dm = d.at(m);
    const auto& al = *alpha;
    return dm[2] * al[3] + dm[1] * b[3] * al[5] + dm[0] * b[4] * al[5] +
           0.5 * dm[0] * b[3] * b[3] * al[7];
}

double LaplaceCoefficients::theta(int m) const {
    if (!gamma) {
        throw SingularCoefficientError("theta: b4 vanishes, no quartic expansion");
    }
    const auto& dm = d.at(m);
    const auto& ga = *gamma;
    return dm[2] * ga[3] + dm[1] * b[5] * ga[7] + dm[0] * b[6] * ga[7] +
           0.5 * dm[0] * b[5] * b[5] * ga[11];
}

LaplaceCoefficients laplace_coefficients(double c, const ModelParams& params, Expansion kind,
                                         GammaFn gamma) {
    if (!(c > 0.0 && c < 1.0)) {
        throw DomainError("laplace_coefficients: c must lie in (0,1)");
    }
    const GammaFn g = resolve(gamma);
    LaplaceCoefficients lc{};
    lc.c = c;
    lc.b[0] = ell(c, params);
    double fact = 1.0;
    for (int k = 1; k <= 6; ++k) {
        fact *= k;
        lc.b[k] = ell_deriv(c, params, k) / fact;
    }

    const double b2 = std::abs(lc.b[2]);
    const double b4 = std::abs(lc.b[4]);
    if (kind == Expansion::Quadratic && b2 < kSingularCoeff) {
        throw SingularCoefficientError("laplace_coefficients: |b2| below 1e-14");
    }
    if (kind == Expansion::Quartic && b4 < kSingularCoeff) {
        throw SingularCoefficientError("laplace_coefficients: |b4| below 1e-14");
    }
    if (b2 > 0.0) {
        std::array<double, 8> al{};
        al.fill(std::numeric_limits<double>::quiet_NaN());
        for (int k = 1; k <= 7; k += 2) {
            al[k] = 0.5 * g(0.5 * k) * std::pow(b2, -0.5 * k);
        }
        lc.alpha = al;
    }
    if (b4 > 0.0) {
        std::array<double, 12> ga{};
        ga.fill(std::numeric_limits<double>::quiet_NaN());
        for (int k = 1; k <= 11; k += 2) {
            ga[k] = 0.25 * g(0.25 * k) * std::pow(b4, -0.25 * k);
        }
        lc.gamma = ga;
    }
    const int p = params.p();
    for (int m : {0, 1, 2, p, p + 1, 2 * p}) {
        lc.d[m] = taylor_coeffs_f(c, m);
    }
    return lc;
}

double LogValue::log() const { return log_magnitude + std::log(mantissa); }

LogValue laplace_expand(const ModelParams& params, std::int64_t n, int m, double curve_tol) {
    return laplace_expand(classify_point(params, curve_tol), params, n, m);
}

LogValue laplace_expand(const PhaseClassification& regime, const ModelParams& params,
                        std::int64_t n, int m, GammaFn gamma) {
    if (n < 1) {
        throw DomainError("laplace_expand: n must be >= 1");
    }
    const double nd = static_cast<double>(n);
    auto coeffs = [&](double c, Expansion kind) {
        LaplaceCoefficients lc = laplace_coefficients(c, params, kind, gamma);
        if (!lc.d.contains(m)) lc.d[m] = taylor_coeffs_f(c, m);
        return lc;
    };
    // alpha_k and gamma_k are half-line moments; the maximizer is interior,
    // so the integral picks up both sides and the bracket doubles.
    constexpr double kTwoSided = 2.0;
    LogValue out{nd * regime.ell_value, 0.0};
    if (const auto* off = std::get_if<OffCurve>(&regime.variant)) {
        const LaplaceCoefficients lc = coeffs(off->x_star, Expansion::Quadratic);
        out.mantissa = kTwoSided * (std::pow(nd, -0.5) * lc.d.at(m)[0] * (*lc.alpha)[1] +
                                    std::pow(nd, -1.5) * lc.lambda(m));
    } else if (const auto* on = std::get_if<OnCurve>(&regime.variant)) {
        double sum = 0.0;
        for (double c : {on->x1_star, on->x2_star}) {
            const LaplaceCoefficients lc = coeffs(c, Expansion::Quadratic);
            // Heights agree only to the classification tolerance.
            sum += lc.d.at(m)[0] * (*lc.alpha)[1] * std::exp(nd * (lc.b[0] - regime.ell_value));
        }
        out.mantissa = kTwoSided * std::pow(nd, -0.5) * sum;
    } else {
        const auto& cr = std::get<Critical>(regime.variant);
        const LaplaceCoefficients lc = coeffs(cr.x_star, Expansion::Quartic);
        out.mantissa = kTwoSided * (std::pow(nd, -0.25) * lc.d.at(m)[0] * (*lc.gamma)[1] +
                                    std::pow(nd, -0.75) * lc.theta(m));
    }
    return out;
}

double quadrature_integral(const ModelParams& params, std::int64_t n, int m, double curve_tol) {
    if (n < 0) {
        throw DomainError("quadrature_integral: n must be >= 0");
    }
    if (m < 0) {
        throw DomainError("quadrature_integral: m must be >= 0");
    }
    const PhaseClassification regime = classify_point(params, curve_tol);
    const LocalMaxima lm = local_maxima(params);
    const double nd = static_cast<double>(n);
    const double shift = regime.ell_value;

    std::vector<double> cuts = {0.0, 0.5 * std::numbers::pi};
    auto add_cut = [&](double x) {
        if (x > 0.0 && x < 1.0) cuts.push_back(std::asin(std::sqrt(x)));
    };
    for (double x : regime.maximizers()) add_cut(x);
    if (lm.inflection_lo) add_cut(*lm.inflection_lo);
    if (lm.inflection_hi) add_cut(*lm.inflection_hi);
    if (lm.left) add_cut(*lm.left);
    if (lm.right) add_cut(*lm.right);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // x = sin^2(theta) absorbs the (x(1-x))^{-1/2} endpoint singularities:
    // dx / sqrt(x(1-x)) = 2 d theta.
    auto integrand = [&](double theta) {
        const double s = std::sin(theta);
        const double x = std::clamp(s * s, 0.0, 1.0);
        const double xm = m == 0 ? 1.0 : std::pow(x, m);
        return 2.0 * xm * std::exp(nd * (ell(x, params) - shift));
    };

    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    struct Panel {
        double a, b, value, err;
        bool operator<(const Panel& o) const { return err < o.err; }
    };
    auto rule = [&](double a, double b) {
        double err = 0.0;
        const double v = GK::integrate(integrand, a, b, 0, 0.0, &err);
        return Panel{a, b, v, err};
    };
    std::priority_queue<Panel> heap;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const Panel pn = rule(cuts[k], cuts[k + 1]);
        total += pn.value;
        total_err += pn.err;
        heap.push(pn);
    }
    constexpr int kPanelBudget = 4000;
    // Rounding in n * (ell - ell*) puts a floor of order n * eps on the attainable relative error.
    const double rel_tol =
        std::max(1e-12, 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, nd) * (1.0 + std::abs(shift)));
    auto converged = [&] { return total_err <= rel_tol * std::abs(total); };
    for (int used = 0; !converged() && used < kPanelBudget; ++used) {
        const Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel lo = rule(worst.a, mid);
        const Panel hi = rule(mid, worst.b);
        total += lo.value + hi.value - worst.value;
        total_err += lo.err + hi.err - worst.err;
        heap.push(lo);
        heap.push(hi);
    }
    if (!(total > 0.0) || !std::isfinite(total) || total_err > std::max(1e-8, 100.0 * rel_tol) * total) {
        throw ConvergenceError("quadrature_integral: no convergence within the panel budget");
    }
    return nd * shift + std::log(total);
}

double maximizer_weight(double x, const ModelParams& params) {
    return std::sqrt(x * (1.0 - x) * std::abs(ell_deriv(x, params, 2)));
}

RegimeLimits limiting_values(const ModelParams& params, double curve_tol, GammaFn gamma) {
    const GammaFn g = resolve(gamma);
    const int p = params.p();
    const double pd = p;
    RegimeLimits lim{classify_point(params, curve_tol), 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, std::nullopt};
    lim.psi_limit = lim.regime.ell_value;

    if (const auto* off = std::get_if<OffCurve>(&lim.regime.variant)) {
        const double x = off->x_star;
        const double curv = std::abs(ell_deriv(x, params, 2));
        lim.var_edge = 1.0 / curv;
        lim.var_star = pd * pd * std::pow(x, 2 * p - 2) / curv;
        lim.cov = pd * std::pow(x, p - 1) / curv;
        lim.scale_exponent = 0.0;
        lim.edge_prob = x;
    } else if (const auto* on = std::get_if<OnCurve>(&lim.regime.variant)) {
        const double x1 = on->x1_star;
        const double x2 = on->x2_star;
        const double w1 = maximizer_weight(x1, params);
        const double w2 = maximizer_weight(x2, params);
        const double mix = w1 * w2 / ((w1 + w2) * (w1 + w2));
        const double de = x1 - x2;
        const double ds = std::pow(x1, p) - std::pow(x2, p);
        lim.var_edge = de * de * mix;
        lim.var_star = ds * ds * mix;
        lim.cov = ds * de * mix;
        lim.scale_exponent = 1.0;
        lim.alpha_mix = w2 / (w1 + w2);
        lim.edge_prob = *lim.alpha_mix * x1 + (1.0 - *lim.alpha_mix) * x2;
    } else {
        const double k = g(0.75) / g(0.25) * 2.0 * std::sqrt(6.0);
        lim.var_edge = k * (pd - 1.0) / std::pow(pd, 2.5);
        lim.var_star = k * std::pow(pd - 1.0, 2 * p - 1) / std::pow(pd, 2.0 * pd - 1.5);
        lim.cov = k * std::pow(pd - 1.0, p) / std::pow(pd, pd + 0.5);
        lim.scale_exponent = 0.5;
        lim.edge_prob = params.critical_x();
    }
    return lim;
}

}  // namespace ergm
