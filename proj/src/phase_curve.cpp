#include "ergm/phase_curve.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "ergm/errors.hpp"

namespace ergm {

PhaseClassification classify_point(const ModelParams& params, double curve_tol) {
    MaximizerOptions opts;
    opts.curve_tol = curve_tol;
    return find_maximizers(params, opts);
}

double q_prime(const CurvePoint& point) {
    const double dx = point.x1_star - point.x2_star;
    if (std::abs(dx) < 1e-8) {
        throw DegenerateError("q_prime: maximizers too close to the critical point");
    }
    return -dx / (std::pow(point.x1_star, point.p) - std::pow(point.x2_star, point.p));
}

double q_prime_critical_limit(int p) {
    return -std::pow(p, p - 2) / std::pow(p - 1, p - 1);
}

namespace {

struct HeightGap {
    int sign;  // sign of ell(x2*) - ell(x1*); -1 / +1 when only one side exists
    double delta;
    double x1;
    double x2;
};

HeightGap height_gap(double beta1, double beta2, int p) {
    const ModelParams params(beta1, beta2, p);
    const LocalMaxima lm = local_maxima(params);
    if (lm.left && lm.right) {
        const double delta = ell(*lm.right, params) - ell(*lm.left, params);
        return {delta > 0.0 ? 1 : (delta < 0.0 ? -1 : 0), delta, *lm.left, *lm.right};
    }
    return {lm.left ? -1 : 1, 0.0, 0.0, 0.0};
}

}  // namespace

CurvePoint solve_q(double beta1, int p, double tol, std::optional<double> beta2_guess) {
    const CriticalPoint cp = critical_point(p);
    if (!(tol > 0.0)) {
        throw DomainError("solve_q: tol must be positive");
    }
    if (!(beta1 < cp.beta1c - kNearCriticalCutoff)) {
        std::ostringstream msg;
        msg << "solve_q: beta1 = " << beta1 << " is not below beta1c - " << kNearCriticalCutoff
            << " (beta1c = " << cp.beta1c << ")";
        throw DomainError(msg.str());
    }

    // At beta2 = beta2c the unique maximizer lies left of (p-1)/p, so the
    // gap is negative there.
    double lo = cp.beta2c;
    double hi = 0.0;
    bool bracketed = false;
    if (beta2_guess) {
        double half = 1e-3;
        for (int k = 0; k < 30 && !bracketed; ++k, half *= 4.0) {
            const double a = std::max(cp.beta2c, *beta2_guess - half);
            const double b = *beta2_guess + half;
            if ((a == cp.beta2c || height_gap(beta1, a, p).sign < 0) &&
                height_gap(beta1, b, p).sign > 0) {
                lo = a;
                hi = b;
                bracketed = true;
            }
        }
    }
    if (!bracketed) {
        double span = 1.0;
        for (int k = 0; k < 60; ++k, span *= 2.0) {
            if (height_gap(beta1, cp.beta2c + span, p).sign > 0) {
                hi = cp.beta2c + span;
                bracketed = true;
                break;
            }
        }
    }
    if (!bracketed) {
        throw BracketError("solve_q: no sign change of the height gap found for beta1 = " +
                           std::to_string(beta1));
    }

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const HeightGap g = height_gap(beta1, mid, p);
        if (g.sign == 0) {
            lo = hi = mid;
            break;
        }
        (g.sign < 0 ? lo : hi) = mid;
    }

    const double beta2 = 0.5 * (lo + hi);
    const HeightGap g = height_gap(beta1, beta2, p);
    if (g.x1 == 0.0 && g.x2 == 0.0) {
        throw ConvergenceError("solve_q: two-maximizer window collapsed at the solution");
    }
    CurvePoint pt{p, beta1, beta2, g.x1, g.x2, 0.0, std::abs(g.delta)};
    if (!(pt.residual < tol)) {
        throw ConvergenceError("solve_q: residual " + std::to_string(pt.residual) +
                               " above tolerance");
    }
    pt.q_prime = q_prime(pt);
    return pt;
}

std::vector<CurvePoint> trace_curve(int p, double beta1_start, double beta1_end, double step,
                                    double tol) {
    const CriticalPoint cp = critical_point(p);
    if (!(step > 0.0)) {
        throw DomainError("trace_curve: step must be positive");
    }
    if (!(beta1_end < beta1_start && beta1_start < cp.beta1c)) {
        throw DomainError("trace_curve: need beta1_end < beta1_start < beta1c");
    }
    std::vector<CurvePoint> out;
    std::optional<double> guess;
    for (long k = 0;; ++k) {
        const double beta1 = beta1_start - static_cast<double>(k) * step;
        if (beta1 < beta1_end - 1e-9 * step) break;
        try {
            out.push_back(solve_q(beta1, p, tol, guess));
        } catch (const NumericError& e) {
            throw ConvergenceError("trace_curve: solve failed at beta1 = " + std::to_string(beta1) +
                                   ": " + e.what());
        }
        // Tangent predictor for the next (smaller) beta1.
        guess = out.back().beta2 - out.back().q_prime * step;
    }
    return out;
}

}  // namespace ergm
