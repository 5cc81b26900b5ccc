#pragma once

// The phase transition curve beta2 = q(beta1): the locus where ell has two
// local maxima of equal height.  It starts at the critical point and runs
// toward beta1 -> -infinity.

#include <optional>
#include <vector>

#include "ergm/model.hpp"

namespace ergm {

inline constexpr double kDefaultCurveTol = 1e-10;
// solve_q refuses beta1 closer than this to beta1c.
inline constexpr double kNearCriticalCutoff = 1e-4;

PhaseClassification classify_point(const ModelParams& params, double curve_tol = kDefaultCurveTol);

struct CurvePoint {
    int p;
    double beta1;
    double beta2;
    double x1_star;
    double x2_star;
    double q_prime;
    double residual;  // |ell(x1*) - ell(x2*)|
};

// Closed form -(x1 - x2) / (x1^p - x2^p).  DegenerateError when the
// maximizers are closer than 1e-8.
double q_prime(const CurvePoint& point);

// Equal-height beta2 for a given beta1 < beta1c - kNearCriticalCutoff.
// `beta2_guess`, when given, seeds a local bracket around it.
CurvePoint solve_q(double beta1, int p, double tol = kDefaultCurveTol,
                   std::optional<double> beta2_guess = std::nullopt);

// Points at beta1 = start, start - step, ... down to `end`, each warm-started
// from the tangent prediction of the previous one.
std::vector<CurvePoint> trace_curve(int p, double beta1_start, double beta1_end, double step,
                                    double tol = kDefaultCurveTol);

// q'(beta1) as beta1 -> beta1c: -p^(p-2) / (p-1)^(p-1).
double q_prime_critical_limit(int p);

}  // namespace ergm
