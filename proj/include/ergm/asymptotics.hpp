#pragma once

// Laplace expansions of  int_0^1 x^m (x(1-x))^{-1/2} e^{n ell(x)} dx  and the
// closed-form n -> infinity limits of the free energy, second derivatives and
// edge probability in the three regimes (off the transition curve, on it,
// and at its critical endpoint).

#include <array>
#include <cstdint>
#include <map>
#include <optional>

#include "ergm/model.hpp"

namespace ergm {

using GammaFn = double (*)(double);

// Taylor coefficients d0, d1, d2 of f(x) = x^m / sqrt(x(1-x)) at c.
std::array<double, 3> taylor_coeffs_f(double c, int m);

enum class Expansion {
    Quadratic,  // regular maximizer, b2 < 0
    Quartic,    // critical point, b2 = b3 = 0, b4 < 0
};

struct LaplaceCoefficients {
    double c;
    std::array<double, 7> b;  // b[k] = ell^(k)(c) / k!, b[0] = ell(c)
    // alpha_k = Gamma(k/2)/2 |b2|^{-k/2}, indexed by k (odd k <= 7 filled).
    std::optional<std::array<double, 8>> alpha;
    // gamma_k = Gamma(k/4)/4 |b4|^{-k/4}, indexed by k (odd k <= 11 filled).
    std::optional<std::array<double, 12>> gamma;
    // Keyed by the power m in x^m / sqrt(x(1-x)), m in {0, 1, 2, p, p+1, 2p}.
    std::map<int, std::array<double, 3>> d;

    // Second-order correction  d2 a3 + d1 b3 a5 + d0 b4 a5 + d0 b3^2 a7 / 2.
    double lambda(int m) const;
    // Quartic analogue  d2 g3 + d1 b5 g7 + d0 b6 g7 + d0 b5^2 g11 / 2.
    double theta(int m) const;
};

// Throws SingularCoefficientError when the coefficient the chosen expansion
// divides by (|b2| or |b4|) is below 1e-14.
LaplaceCoefficients laplace_coefficients(double c, const ModelParams& params,
                                         Expansion kind = Expansion::Quadratic,
                                         GammaFn gamma = nullptr);

// value = mantissa * exp(log_magnitude).
struct LogValue {
    double log_magnitude;
    double mantissa;

    double log() const;
};

// Truncated expansion of the integral above for the regime of `params`
// (classified with classify_point at curve_tol).
LogValue laplace_expand(const ModelParams& params, std::int64_t n, int m, double curve_tol = 1e-10);
LogValue laplace_expand(const PhaseClassification& regime, const ModelParams& params,
                        std::int64_t n, int m, GammaFn gamma = nullptr);

// Log of the same integral by adaptive Gauss-Kronrod in theta, x = sin^2(theta),
// split at every maximizer and zero of ell''.  n = 0 is allowed.
double quadrature_integral(const ModelParams& params, std::int64_t n, int m,
                           double curve_tol = 1e-10);

struct RegimeLimits {
    PhaseClassification regime;
    double psi_limit;
    double var_edge;
    double var_star;
    double cov;
    double scale_exponent;  // 0 off the curve, 1 on it, 1/2 at the critical point
    double edge_prob;
    std::optional<double> alpha_mix;
};

// sqrt(x (1-x) |ell''(x)|), the weight attached to each maximizer on the curve.
double maximizer_weight(double x, const ModelParams& params);

RegimeLimits limiting_values(const ModelParams& params, double curve_tol = 1e-10,
                             GammaFn gamma = nullptr);

}  // namespace ergm
