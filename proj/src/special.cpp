#include "ergm/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "ergm/errors.hpp"

namespace ergm {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2 pi))
constexpr double kLog2Pi = 1.8378770664093454836;

}  // namespace

double gamma_fn(double x) {
    if (x < 0.5) {
        if (x == std::floor(x)) {
            throw DomainError("gamma_fn: pole at non-positive integer");
        }
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    }
    x -= 1.0;
    double a = kLanczosCoef[0];
    const double t = x + kLanczosG + 0.5;
    for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) {
        a += kLanczosCoef[i] / (x + static_cast<double>(i));
    }
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double stirling_remainder(double k) {
    constexpr double S0 = 1.0 / 12.0;
    constexpr double S1 = 1.0 / 360.0;
    constexpr double S2 = 1.0 / 1260.0;
    constexpr double S3 = 1.0 / 1680.0;
    constexpr double S4 = 1.0 / 1188.0;
    if (k <= 15.0) {
        return std::lgamma(k + 1.0) - (k + 0.5) * std::log(k) + k - kLogSqrt2Pi;
    }
    const double kk = k * k;
    if (k > 500.0) return (S0 - S1 / kk) / k;
    if (k > 80.0) return (S0 - (S1 - S2 / kk) / kk) / k;
    if (k > 35.0) return (S0 - (S1 - (S2 - S3 / kk) / kk) / kk) / k;
    return (S0 - (S1 - (S2 - (S3 - S4 / kk) / kk) / kk) / kk) / k;
}

double binomial_deviance(double x, double m) {
    if (std::abs(x - m) < 0.1 * (x + m)) {
        double v = (x - m) / (x + m);
        double s = (x - m) * v;
        double ej = 2.0 * x * v;
        v *= v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v;
            const double s1 = s + ej / (2 * j + 1);
            if (s1 == s) return s1;
            s = s1;
        }
        return s;
    }
    return x * std::log(x / m) + m - x;
}

double log_binomial_half_pmf(std::int64_t n, std::int64_t i) {
    if (n < 0 || i < 0 || i > n) {
        throw DomainError("log_binomial_half_pmf: need 0 <= i <= n");
    }
    const double nd = static_cast<double>(n);
    if (i == 0 || i == n) {
        return -nd * std::numbers::ln2;
    }
    const double a = static_cast<double>(i);
    const double b = static_cast<double>(n - i);
    const double half = 0.5 * nd;
    // Each pair is added commutatively so the result is symmetric in (a, b).
    const double lc = stirling_remainder(nd) - (stirling_remainder(a) + stirling_remainder(b)) -
                      (binomial_deviance(a, half) + binomial_deviance(b, half));
    const double lf = kLog2Pi + (std::log(a) + std::log(b)) - std::log(nd);
    return lc - 0.5 * lf;
}

double log_sum_exp(std::span<const double> values) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : values) mx = std::max(mx, v);
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double v : values) s += std::exp(v - mx);
    return mx + std::log(s);
}

}  // namespace ergm
