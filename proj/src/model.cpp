#include "ergm/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ergm/detail/bisect.hpp"
#include "ergm/errors.hpp"

namespace ergm {

ModelParams::ModelParams(double beta1, double beta2, int p) : beta1_(beta1), beta2_(beta2), p_(p) {
    if (p < 2) {
        throw DomainError("star order p must be an integer >= 2, got " + std::to_string(p));
    }
    if (!std::isfinite(beta1) || !std::isfinite(beta2)) {
        throw DomainError("beta1 and beta2 must be finite");
    }
}

CriticalPoint critical_point(int p) {
    if (p < 2) {
        throw DomainError("critical_point: p must be >= 2");
    }
    const double pd = p;
    return {std::log(pd - 1.0) - pd / (pd - 1.0), std::pow(pd, pd - 1.0) / std::pow(pd - 1.0, pd)};
}

double ell(double x, const ModelParams& params) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("ell: x must lie in [0,1]");
    }
    const double xlogx = x > 0.0 ? x * std::log(x) : 0.0;
    const double ylogy = x < 1.0 ? (1.0 - x) * std::log1p(-x) : 0.0;
    return params.beta1() * x + params.beta2() * std::pow(x, params.p()) - xlogx - ylogy;
}

namespace {

// p (p-1) ... (p-k+1); zero once k exceeds p.
double falling_factorial(int p, int k) {
    double r = 1.0;
    for (int j = 0; j < k; ++j) {
        r *= static_cast<double>(p - j);
    }
    return r;
}

}  // namespace

double ell_deriv(double x, const ModelParams& params, int order) {
    if (order < 1 || order > 6) {
        throw DomainError("ell_deriv: order must be in 1..6");
    }
    if (!(x > 0.0 && x < 1.0)) {
        throw DomainError("ell_deriv: x must lie in (0,1)");
    }
    const int p = params.p();
    const double ff = falling_factorial(p, order);
    const double star = ff == 0.0 ? 0.0 : params.beta2() * ff * std::pow(x, p - order);
    if (order == 1) {
        return params.beta1() + star - (std::log(x) - std::log1p(-x));
    }
    // d^k/dx^k of the entropy term for k >= 2:
    //   -(-1)^k (k-2)! / x^(k-1) - (k-2)! / (1-x)^(k-1)
    double fact = 1.0;
    for (int j = 2; j <= order - 2; ++j) {
        fact *= j;
    }
    const double sign = (order % 2 == 0) ? -1.0 : 1.0;
    const double left = sign * fact / std::pow(x, order - 1);
    const double right = -fact / std::pow(1.0 - x, order - 1);
    return star + left + right;
}

std::vector<double> PhaseClassification::maximizers() const {
    return std::visit(
        [](const auto& v) -> std::vector<double> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, OnCurve>) {
                return {v.x1_star, v.x2_star};
            } else {
                return {v.x_star};
            }
        },
        variant);
}

std::string_view PhaseClassification::regime_name() const noexcept {
    if (on_curve()) return "on-curve";
    if (critical()) return "critical";
    return "off-curve";
}

LocalMaxima local_maxima(const ModelParams& params, const MaximizerOptions& opts) {
    if (!(opts.tol > 0.0)) {
        throw DomainError("find_maximizers: tol must be positive");
    }
    const int p = params.p();
    const double xc = params.critical_x();
    const double beta2c = critical_point(p).beta2c;
    auto d1 = [&](double x) { return ell_deriv(x, params, 1); };
    // Newton steps on ell' from a bisected root, kept only while they shrink |ell'|.
    auto polish = [&](double x) {
        double g = d1(x);
        for (int k = 0; k < 2 && g != 0.0; ++k) {
            const double y = x - g / ell_deriv(x, params, 2);
            if (!(y > 0.0 && y < 1.0 && std::abs(y - x) <= opts.tol)) break;
            const double gy = d1(y);
            if (!(std::abs(gy) < std::abs(g))) break;
            x = y;
            g = gy;
        }
        return x;
    };
    LocalMaxima out;

    if (params.beta2() <= beta2c) {
        // ell'' <= 0 on (0,1): ell' runs monotonically from +inf to -inf.
        const double x = polish(detail::bisect_sign_change(d1, 0.0, 1.0, true, opts.tol, opts.max_iter,
                                                           "find_maximizers"));
        (x < xc ? out.left : out.right) = x;
        return out;
    }

    // ell'' has the sign of beta2 - m(x) with m(x) = 1/(p(p-1) x^(p-1) (1-x)),
    // which decreases on (0, xc) and increases on (xc, 1).
    const double pp = static_cast<double>(p) * (p - 1);
    auto excess = [&](double x) {
        return 1.0 / (pp * std::pow(x, p - 1) * (1.0 - x)) - params.beta2();
    };
    const double ix_tol = std::min(opts.tol, 1e-14);
    const double a = detail::bisect_sign_change(excess, 0.0, xc, true, ix_tol, opts.max_iter,
                                                "find_maximizers (inflection)");
    const double b = detail::bisect_sign_change(excess, xc, 1.0, false, ix_tol, opts.max_iter,
                                                "find_maximizers (inflection)");
    out.inflection_lo = a;
    out.inflection_hi = b;

    const double da = d1(a);
    const double db = d1(b);
    if (da < 0.0) {
        out.left = polish(detail::bisect_sign_change(d1, 0.0, a, true, opts.tol, opts.max_iter,
                                                     "find_maximizers"));
    }
    if (db > 0.0) {
        out.right = polish(detail::bisect_sign_change(d1, b, 1.0, true, opts.tol, opts.max_iter,
                                                      "find_maximizers"));
    }
    if (!out.left && !out.right) {
        throw ConvergenceError("find_maximizers: no local maximum bracketed");
    }
    return out;
}

PhaseClassification find_maximizers(const ModelParams& params, const MaximizerOptions& opts) {
    if (!(opts.curve_tol > 0.0)) {
        throw DomainError("find_maximizers: curve_tol must be positive");
    }
    const CriticalPoint cp = critical_point(params.p());
    if (std::max(std::abs(params.beta1() - cp.beta1c), std::abs(params.beta2() - cp.beta2c)) <
        opts.curve_tol) {
        const double xc = params.critical_x();
        return {Critical{xc}, ell(xc, params)};
    }

    const LocalMaxima lm = local_maxima(params, opts);
    if (lm.left && lm.right) {
        const double h1 = ell(*lm.left, params);
        const double h2 = ell(*lm.right, params);
        if (std::abs(h1 - h2) < opts.curve_tol * std::max(1.0, std::abs(h1))) {
            return {OnCurve{*lm.left, *lm.right}, std::max(h1, h2)};
        }
        return h1 > h2 ? PhaseClassification{OffCurve{*lm.left}, h1}
                       : PhaseClassification{OffCurve{*lm.right}, h2};
    }
    const double x = lm.left ? *lm.left : *lm.right;
    return {OffCurve{x}, ell(x, params)};
}

}  // namespace ergm
