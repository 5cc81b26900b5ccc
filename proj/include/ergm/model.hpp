#pragma once

// Edge / outward p-star model: parameters, the limiting exponent function
// ell(x) = b1 x + b2 x^p - x log x - (1-x) log(1-x) and its maximizers.

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace ergm {

class ModelParams {
public:
    // Throws DomainError unless p >= 2 and both betas are finite.
    ModelParams(double beta1, double beta2, int p);

    double beta1() const noexcept { return beta1_; }
    double beta2() const noexcept { return beta2_; }
    int p() const noexcept { return p_; }

    // The x at which the critical point has its maximizer, (p-1)/p.
    double critical_x() const noexcept { return static_cast<double>(p_ - 1) / p_; }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

private:
    double beta1_;
    double beta2_;
    int p_;
};

struct CriticalPoint {
    double beta1c;
    double beta2c;
};

// (log(p-1) - p/(p-1), p^(p-1)/(p-1)^p)
CriticalPoint critical_point(int p);

// Continuous extension on [0,1].
double ell(double x, const ModelParams& params);

// Analytic derivative of order 1..6 on the open interval (0,1).
double ell_deriv(double x, const ModelParams& params, int order);

struct OffCurve {
    double x_star;
};
struct OnCurve {
    double x1_star;
    double x2_star;
};
struct Critical {
    double x_star;
};

struct PhaseClassification {
    std::variant<OffCurve, OnCurve, Critical> variant;
    double ell_value;

    bool off_curve() const noexcept { return std::holds_alternative<OffCurve>(variant); }
    bool on_curve() const noexcept { return std::holds_alternative<OnCurve>(variant); }
    bool critical() const noexcept { return std::holds_alternative<Critical>(variant); }

    // Global maximizers in ascending order (one or two entries).
    std::vector<double> maximizers() const;

    // "off-curve", "on-curve" or "critical".
    std::string_view regime_name() const noexcept;
};

struct MaximizerOptions {
    double tol = 1e-12;        // absolute accuracy in x
    double curve_tol = 1e-10;  // critical-point distance and equal-height tolerance
    int max_iter = 400;
};

// Local structure of ell: the zeros of ell'' (when beta2 exceeds the critical
// value) and the local maximizers on either side of them.
struct LocalMaxima {
    std::optional<double> inflection_lo;
    std::optional<double> inflection_hi;
    // When ell'' < 0 except possibly at one point, the single maximizer is
    // stored in `left` if it lies below (p-1)/p and in `right` otherwise.
    std::optional<double> left;
    std::optional<double> right;
};

LocalMaxima local_maxima(const ModelParams& params, const MaximizerOptions& opts = {});

// All global maximizers of ell, classified.  Critical when the parameters are
// within curve_tol of the critical point (maximizer reported as (p-1)/p);
// OnCurve when two local maxima have heights equal to within
// curve_tol * max(1, |ell|); OffCurve otherwise.
PhaseClassification find_maximizers(const ModelParams& params, const MaximizerOptions& opts = {});

}  // namespace ergm
