#include "ergm/exact_ensemble.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "ergm/errors.hpp"
#include "ergm/special.hpp"

namespace ergm {

namespace {

// Coefficients of the tilt about the midpoint:
//   beta1 i + beta2 n (i/n)^p = tilt_mid + n * sum_k c[k] u^k,  u = (i - n/2)/n.
std::vector<double> midpoint_tilt_coeffs(const ModelParams& params) {
    const int p = params.p();
    std::vector<double> c(p + 1, 0.0);
    double binom = 1.0;  // C(p, k)
    for (int k = 1; k <= p; ++k) {
        binom = binom * (p - k + 1) / k;
        c[k] = params.beta2() * binom * std::ldexp(1.0, k - p);
    }
    c[1] += params.beta1();
    return c;
}

}  // namespace

TiltedBinomial::TiltedBinomial(const ModelParams& params, std::int64_t n, std::int64_t max_entries)
    : params_(params), n_(n) {
    if (n < 1) {
        throw DomainError("tilted_binomial: n must be >= 1");
    }
    if (n + 1 > max_entries) {
        throw ResourceError("tilted_binomial: n = " + std::to_string(n) +
                            " exceeds the configured entry cap");
    }
    const double nd = static_cast<double>(n);
    const std::vector<double> c = midpoint_tilt_coeffs(params);
    const int p = params.p();
    tilt_mid_ = params.beta1() * 0.5 * nd + params.beta2() * nd * std::ldexp(1.0, -p);
    log_offset_ = nd * std::numbers::ln2 + tilt_mid_;

    log_weights_.resize(static_cast<std::size_t>(n) + 1);
    for (std::int64_t i = 0; i <= n; ++i) {
        const double u = (static_cast<double>(i) - 0.5 * nd) / nd;
        double poly = c[p];
        for (int k = p - 1; k >= 1; --k) {
            poly = c[k] + u * poly;
        }
        const double tilt = nd * u * poly;
        log_weights_[static_cast<std::size_t>(i)] = log_binomial_half_pmf(n, i) + tilt;
    }
    log_norm_rel_ = log_sum_exp(log_weights_);
    if (!std::isfinite(log_norm_rel_)) {
        throw NumericError("tilted_binomial: non-finite normalization");
    }
}

double TiltedBinomial::log_weight(std::int64_t i) const {
    if (i < 0 || i > n_) {
        throw DomainError("log_weight: index out of range");
    }
    return log_weights_[static_cast<std::size_t>(i)] + log_offset_;
}

double TiltedBinomial::log_tilted_moment(int k) const {
    if (k < 0) {
        throw DomainError("log_tilted_moment: k must be >= 0");
    }
    if (k == 0) {
        return log_tilted_mean();
    }
    std::vector<double> terms(static_cast<std::size_t>(n_));
    for (std::int64_t i = 1; i <= n_; ++i) {
        terms[static_cast<std::size_t>(i - 1)] =
            log_weights_[static_cast<std::size_t>(i)] + k * std::log(static_cast<double>(i));
    }
    return log_sum_exp(terms) + tilt_mid_;
}

std::vector<double> TiltedBinomial::probabilities() const {
    std::vector<double> prob(log_weights_.size());
    double total = 0.0;
    for (std::size_t i = 0; i < prob.size(); ++i) {
        prob[i] = std::exp(log_weights_[i] - log_norm_rel_);
        total += prob[i];
    }
    for (double& v : prob) v /= total;
    return prob;
}

TiltedBinomial tilted_binomial(const ModelParams& params, std::int64_t n) {
    return TiltedBinomial(params, n);
}

double psi_n(const ModelParams& params, std::int64_t n) {
    const TiltedBinomial tb(params, n);
    return std::numbers::ln2 + tb.log_tilted_mean() / static_cast<double>(n);
}

ExactDerivatives exact_derivatives(const ModelParams& params, std::int64_t n) {
    return exact_derivatives(TiltedBinomial(params, n));
}

ExactDerivatives exact_derivatives(const TiltedBinomial& tb) {
    const std::int64_t n = tb.n();
    const double nd = static_cast<double>(n);
    const int p = tb.params().p();
    const std::vector<double> prob = tb.probabilities();
    auto star = [&](std::int64_t i) { return nd * std::pow(static_cast<double>(i) / nd, p); };

    // Centered first moment folded from both ends, so a symmetric pmf gives
    // an exactly zero offset.
    double shift = 0.0;
    for (std::int64_t lo = 0, hi = n; lo <= hi; ++lo, --hi) {
        const double tlo = static_cast<double>(lo) - 0.5 * nd;
        if (lo == hi) {
            shift += prob[static_cast<std::size_t>(lo)] * tlo;
        } else {
            const double thi = static_cast<double>(hi) - 0.5 * nd;
            shift += prob[static_cast<std::size_t>(lo)] * tlo + prob[static_cast<std::size_t>(hi)] * thi;
        }
    }
    const double mean_w = 0.5 * nd + shift;

    double mean_s = 0.0;
    for (std::int64_t i = 0; i <= n; ++i) {
        mean_s += prob[static_cast<std::size_t>(i)] * star(i);
    }

    double var_w = 0.0;
    double var_s = 0.0;
    double cov = 0.0;
    for (std::int64_t i = 0; i <= n; ++i) {
        const double pi = prob[static_cast<std::size_t>(i)];
        const double dw = (static_cast<double>(i) - 0.5 * nd) - shift;
        const double ds = star(i) - mean_s;
        var_w += pi * dw * dw;
        var_s += pi * ds * ds;
        cov += pi * dw * ds;
    }

    ExactDerivatives d{};
    d.psi = std::numbers::ln2 + tb.log_tilted_mean() / nd;
    d.d_beta1 = mean_w / nd;
    d.d_beta2 = mean_s / nd;
    d.d2_beta1 = var_w / nd;
    d.d2_beta2 = var_s / nd;
    d.d2_mixed = cov / nd;
    d.edge_prob = d.d_beta1;
    return d;
}

double edge_probability_exact(const ModelParams& params, std::int64_t n) {
    if (n < 2) {
        throw DomainError("edge_probability_exact: n must be >= 2");
    }
    return exact_derivatives(params, n).edge_prob;
}

namespace {

template <typename Visit>
void enumerate_graphs(int n, Visit&& visit) {
    if (n < 1) {
        throw DomainError("brute force: n must be >= 1");
    }
    if (n > 4) {
        throw ResourceError("brute force enumeration is capped at n = 4");
    }
    const int cells = n * n;
    const std::uint32_t count = 1u << cells;
    const std::uint32_t row_mask = (1u << n) - 1u;
    int degrees[4] = {0, 0, 0, 0};
    for (std::uint32_t g = 0; g < count; ++g) {
        for (int i = 0; i < n; ++i) {
            degrees[i] = std::popcount((g >> (i * n)) & row_mask);
        }
        visit(g, std::span<const int>(degrees, static_cast<std::size_t>(n)));
    }
}

// n^2 (beta1 e(X) + beta2 s(X)) from the out-degrees.
double graph_exponent(const ModelParams& params, int n, std::span<const int> degrees) {
    double edges = 0.0;
    double stars = 0.0;
    for (int w : degrees) {
        edges += w;
        stars += std::pow(static_cast<double>(w), params.p());
    }
    return params.beta1() * edges + params.beta2() * stars / std::pow(n, params.p() - 1);
}

}  // namespace

double brute_force_psi(const ModelParams& params, int n) {
    std::vector<double> exps;
    exps.reserve(std::size_t{1} << (n > 0 && n <= 4 ? n * n : 0));
    enumerate_graphs(n, [&](std::uint32_t, std::span<const int> deg) {
        exps.push_back(graph_exponent(params, n, deg));
    });
    return log_sum_exp(exps) / (static_cast<double>(n) * n);
}

double brute_force_edge_probability(const ModelParams& params, int n) {
    if (n < 2) {
        throw DomainError("brute_force_edge_probability: n must be >= 2");
    }
    std::vector<double> exps;
    std::vector<bool> has_edge;
    enumerate_graphs(n, [&](std::uint32_t g, std::span<const int> deg) {
        exps.push_back(graph_exponent(params, n, deg));
        has_edge.push_back(((g >> 1) & 1u) != 0);  // X_12: row 0, column 1
    });
    double mx = exps.front();
    for (double v : exps) mx = std::max(mx, v);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < exps.size(); ++k) {
        const double w = std::exp(exps[k] - mx);
        den += w;
        if (has_edge[k]) num += w;
    }
    return num / den;
}

}  // namespace ergm
