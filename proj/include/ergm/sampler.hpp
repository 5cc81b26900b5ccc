#pragma once

// Exact sampling from the ensemble.  Rows are independent and each out-degree
// is a draw from the tilted binomial; given its degree a row is a uniformly
// random subset of the n columns (diagonal included).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ergm/exact_ensemble.hpp"
#include "ergm/model.hpp"

namespace ergm {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

// Stateless counter-based generator: the k-th output of stream (a, b) under a
// seed is a fixed function of (seed, a, b, k).
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b = 0) noexcept;

    std::uint64_t bits(std::uint64_t counter) const noexcept;
    // Uniform on [0, 1) with 53 random bits.
    double uniform(std::uint64_t counter) const noexcept;

private:
    std::uint64_t key_;
};

// Inverse-CDF sampler over {0, ..., n}.
class DegreeSampler {
public:
    explicit DegreeSampler(const TiltedBinomial& tb);

    std::int64_t n() const noexcept { return static_cast<std::int64_t>(cdf_.size()) - 1; }
    std::int32_t draw(double u) const noexcept;
    std::span<const double> cdf() const noexcept { return cdf_; }

private:
    std::vector<double> cdf_;
};

struct GraphSample {
    std::int64_t n;
    std::vector<std::int32_t> degrees;
    std::optional<std::vector<std::uint8_t>> adjacency;  // row-major n x n
    double e_density;
    double s_density;
};

// degrees[r][i] uses stream (seed, r, i).
std::vector<std::vector<std::int32_t>> sample_degrees(const TiltedBinomial& tb, int replicas,
                                                      std::uint64_t seed);

// Densities of a degree vector: e = sum W / n^2, s = sum W^p / n^(p+1).
GraphSample graph_from_degrees(std::span<const std::int32_t> degrees, int p);

// Materializes each row as a uniform W_i-subset by partial Fisher-Yates.
GraphSample realize_graph(std::span<const std::int32_t> degrees, int p, std::uint64_t seed);

struct McEstimates {
    int replicas;
    double mean_e;
    double mean_s;
    double var_e_scaled;  // n^2 Var(e)
    double var_s_scaled;
    double cov_scaled;
    double edge_freq;  // mean of W_1 / n
    double se_mean_e;
    double se_mean_s;
    double se_var_e;
    double se_var_s;
    double se_cov;
    double se_edge;
};

// threads = 0 picks hardware concurrency; results do not depend on it.
McEstimates mc_estimates(const ModelParams& params, std::int64_t n, int replicas,
                         std::uint64_t seed, unsigned threads = 0);

struct ScalingRecord {
    std::int64_t n;
    ExactDerivatives exact;
    McEstimates mc;
    double predicted_var_edge;  // limit constant * n^scale_exponent
    double predicted_var_star;
    double predicted_cov;
    double scale_exponent;
};

std::vector<ScalingRecord> scaling_study(const ModelParams& params,
                                         std::span<const std::int64_t> n_grid, int replicas,
                                         std::uint64_t seed, unsigned threads = 0);

// Least-squares slope of log(ys) against log(xs).
double loglog_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace ergm
