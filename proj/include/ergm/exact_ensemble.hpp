#pragma once

// Exact finite-n quantities.  Rows of the adjacency matrix are independent
// under the model, and each out-degree W follows Binomial(n, 1/2) tilted by
// exp(beta1 W + beta2 W^p / n^(p-1)).  Everything below is a sum over that
// (n+1)-point law, carried out in log space.

#include <cstdint>
#include <span>
#include <vector>

#include "ergm/model.hpp"

namespace ergm {

inline constexpr std::int64_t kDefaultMaxEntries = 100'000'000;

class TiltedBinomial {
public:
    TiltedBinomial(const ModelParams& params, std::int64_t n,
                   std::int64_t max_entries = kDefaultMaxEntries);

    std::int64_t n() const noexcept { return n_; }
    const ModelParams& params() const noexcept { return params_; }

    // log C(n,i) + beta1 i + beta2 i^p / n^(p-1).
    double log_weight(std::int64_t i) const;
    // log-sum-exp of log_weight over i = 0..n.
    double log_norm() const noexcept { return log_norm_rel_ + log_offset_; }

    // Weights are held relative to log_offset() = n log 2 + (tilt at i = n/2),
    // which keeps the stored values O(n (beta-scale)) smaller and makes the
    // table exactly symmetric whenever the tilt is symmetric about n/2.
    std::span<const double> relative_log_weights() const noexcept { return log_weights_; }
    double log_offset() const noexcept { return log_offset_; }
    double relative_log_norm() const noexcept { return log_norm_rel_; }

    // log E[exp(beta1 W + beta2 W^p / n^(p-1))] under Binomial(n, 1/2).
    double log_tilted_mean() const noexcept { return log_norm_rel_ + tilt_mid_; }

    // log E[W^k exp(beta1 W + ...)] under Binomial(n, 1/2); i = 0 dropped when k >= 1.
    double log_tilted_moment(int k) const;

    // Normalized pmf, summed in index order and renormalized so the total is 1.
    std::vector<double> probabilities() const;

private:
    ModelParams params_;
    std::int64_t n_;
    std::vector<double> log_weights_;
    double tilt_mid_;
    double log_offset_;
    double log_norm_rel_;
};

struct ExactDerivatives {
    double psi;
    double d_beta1;   // E_n[e(X)]
    double d_beta2;   // E_n[s(X)]
    double d2_beta1;  // n^2 Var_n(e)
    double d2_beta2;  // n^2 Var_n(s)
    double d2_mixed;  // n^2 Cov_n(e, s)
    double edge_prob;
};

TiltedBinomial tilted_binomial(const ModelParams& params, std::int64_t n);

// n^-2 log Z_n.
double psi_n(const ModelParams& params, std::int64_t n);

ExactDerivatives exact_derivatives(const ModelParams& params, std::int64_t n);
ExactDerivatives exact_derivatives(const TiltedBinomial& tb);

// P_n(X_12 = 1) = E[W]/n; needs n >= 2.
double edge_probability_exact(const ModelParams& params, std::int64_t n);

// Enumerates all 2^(n^2) adjacency matrices (self-loops included); n <= 4.
double brute_force_psi(const ModelParams& params, int n);

// P_n(X_12 = 1) by enumeration, 2 <= n <= 4.
double brute_force_edge_probability(const ModelParams& params, int n);

struct SumIntegralComparison {
    double log_exact;   // log E[W^k exp(...)]
    double log_approx;  // log of n^k 2^-n sqrt(n / 2 pi) int_0^1 x^k (x(1-x))^-1/2 e^{n ell}
    double ratio;       // exact / approx
};

// Sum-to-integral approximation of the tilted binomial moments.  n >= 10 and
// k in {0, 1, 2, p, p+1, 2p}.
SumIntegralComparison sum_vs_integral(const ModelParams& params, std::int64_t n, int k);

}  // namespace ergm
