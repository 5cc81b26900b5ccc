#include "ergm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "ergm/asymptotics.hpp"
#include "ergm/errors.hpp"

namespace ergm {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

unsigned resolve_threads(unsigned threads, int work) {
    unsigned t = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    return std::max(1u, std::min<unsigned>(t, static_cast<unsigned>(std::max(work, 1))));
}

// Runs body(begin, end) over [0, count) split into contiguous chunks.
template <typename Body>
void parallel_chunks(int count, unsigned threads, Body&& body) {
    const unsigned t = resolve_threads(threads, count);
    if (t == 1) {
        body(0, count);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(t);
    for (unsigned k = 0; k < t; ++k) {
        const int begin = static_cast<int>(static_cast<long long>(count) * k / t);
        const int end = static_cast<int>(static_cast<long long>(count) * (k + 1) / t);
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
}

struct Moments {
    double mean;
    double var;  // unbiased
    double se_mean;
};

Moments moments(std::span<const double> v) {
    const double r = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= r;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double var = ss / (r - 1.0);
    return {mean, var, std::sqrt(var / r)};
}

// Unbiased covariance and the standard error of that estimate from the
// spread of the centered products.
std::pair<double, double> covariance_with_se(std::span<const double> a, std::span<const double> b,
                                             double mean_a, double mean_b) {
    const std::size_t r = a.size();
    std::vector<double> prod(r);
    for (std::size_t k = 0; k < r; ++k) prod[k] = (a[k] - mean_a) * (b[k] - mean_b);
    const Moments m = moments(prod);
    const double rd = static_cast<double>(r);
    return {m.mean * rd / (rd - 1.0), m.se_mean * rd / (rd - 1.0)};
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b) noexcept
    : key_(mix64(mix64(mix64(seed) ^ (stream_a * kGolden + 1)) ^ (stream_b * kGolden + 2))) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
    return mix64(key_ + (counter + 1) * kGolden);
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

DegreeSampler::DegreeSampler(const TiltedBinomial& tb) {
    const std::vector<double> prob = tb.probabilities();
    cdf_.resize(prob.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < prob.size(); ++i) {
        acc += prob[i];
        cdf_[i] = acc;
    }
    cdf_.back() = 1.0;
}

std::int32_t DegreeSampler::draw(double u) const noexcept {
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<std::int32_t>(std::min<std::ptrdiff_t>(it - cdf_.begin(),
                                                              static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
}

std::vector<std::vector<std::int32_t>> sample_degrees(const TiltedBinomial& tb, int replicas,
                                                      std::uint64_t seed) {
    if (replicas < 1) {
        throw DomainError("sample_degrees: replicas must be >= 1");
    }
    const DegreeSampler sampler(tb);
    const std::int64_t n = tb.n();
    std::vector<std::vector<std::int32_t>> out(static_cast<std::size_t>(replicas));
    for (int r = 0; r < replicas; ++r) {
        auto& row = out[static_cast<std::size_t>(r)];
        row.resize(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i) {
            const CounterRng rng(seed, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(i));
            row[static_cast<std::size_t>(i)] = sampler.draw(rng.uniform(0));
        }
    }
    return out;
}

GraphSample graph_from_degrees(std::span<const std::int32_t> degrees, int p) {
    const auto n = static_cast<std::int64_t>(degrees.size());
    if (n < 1) {
        throw DomainError("graph_from_degrees: empty degree vector");
    }
    const double nd = static_cast<double>(n);
    double edges = 0.0;
    double stars = 0.0;
    for (std::int32_t w : degrees) {
        if (w < 0 || w > n) {
            throw DomainError("graph_from_degrees: degree outside [0, n]");
        }
        edges += w;
        stars += std::pow(w / nd, p);
    }
    return {n, std::vector<std::int32_t>(degrees.begin(), degrees.end()), std::nullopt,
            edges / (nd * nd), stars / nd};
}

GraphSample realize_graph(std::span<const std::int32_t> degrees, int p, std::uint64_t seed) {
    GraphSample g = graph_from_degrees(degrees, p);
    const std::int64_t n = g.n;
    std::vector<std::uint8_t> adj(static_cast<std::size_t>(n * n), 0);
    std::vector<std::int64_t> cols(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        const CounterRng rng(seed, static_cast<std::uint64_t>(i), 0x6A);
        std::iota(cols.begin(), cols.end(), std::int64_t{0});
        const std::int32_t w = degrees[static_cast<std::size_t>(i)];
        for (std::int32_t k = 0; k < w; ++k) {
            const auto remaining = static_cast<std::uint64_t>(n - k);
            const auto j = k + static_cast<std::int64_t>(
                                   static_cast<std::uint64_t>(rng.uniform(static_cast<std::uint64_t>(k)) *
                                                              static_cast<double>(remaining)));
            std::swap(cols[static_cast<std::size_t>(k)], cols[static_cast<std::size_t>(std::min(j, n - 1))]);
            adj[static_cast<std::size_t>(i * n + cols[static_cast<std::size_t>(k)])] = 1;
        }
    }
    g.adjacency = std::move(adj);
    return g;
}

McEstimates mc_estimates(const ModelParams& params, std::int64_t n, int replicas,
                         std::uint64_t seed, unsigned threads) {
    if (replicas < 2) {
        throw DomainError("mc_estimates: replicas must be >= 2");
    }
    const TiltedBinomial tb(params, n);
    const DegreeSampler sampler(tb);
    const double nd = static_cast<double>(n);
    const int p = params.p();
    const auto r_count = static_cast<std::size_t>(replicas);
    std::vector<double> e(r_count);
    std::vector<double> s(r_count);
    std::vector<double> w1(r_count);

    parallel_chunks(replicas, threads, [&](int begin, int end) {
        for (int r = begin; r < end; ++r) {
            std::int64_t edges = 0;
            double stars = 0.0;
            double first = 0.0;
            for (std::int64_t i = 0; i < n; ++i) {
                const CounterRng rng(seed, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(i));
                const std::int32_t w = sampler.draw(rng.uniform(0));
                edges += w;
                stars += std::pow(w / nd, p);
                if (i == 0) first = w / nd;
            }
            const auto k = static_cast<std::size_t>(r);
            e[k] = static_cast<double>(edges) / (nd * nd);
            s[k] = stars / nd;
            w1[k] = first;
        }
    });

    const Moments me = moments(e);
    const Moments ms = moments(s);
    const Moments mw = moments(w1);
    const auto [var_e, se_var_e] = covariance_with_se(e, e, me.mean, me.mean);
    const auto [var_s, se_var_s] = covariance_with_se(s, s, ms.mean, ms.mean);
    const auto [cov, se_cov] = covariance_with_se(e, s, me.mean, ms.mean);
    const double n2 = nd * nd;

    McEstimates out{};
    out.replicas = replicas;
    out.mean_e = me.mean;
    out.mean_s = ms.mean;
    out.var_e_scaled = n2 * var_e;
    out.var_s_scaled = n2 * var_s;
    out.cov_scaled = n2 * cov;
    out.edge_freq = mw.mean;
    out.se_mean_e = me.se_mean;
    out.se_mean_s = ms.se_mean;
    out.se_var_e = n2 * se_var_e;
    out.se_var_s = n2 * se_var_s;
    out.se_cov = n2 * se_cov;
    out.se_edge = mw.se_mean;
    return out;
}

std::vector<ScalingRecord> scaling_study(const ModelParams& params,
                                         std::span<const std::int64_t> n_grid, int replicas,
                                         std::uint64_t seed, unsigned threads) {
    if (n_grid.empty()) {
        throw DomainError("scaling_study: empty n grid");
    }
    if (!std::is_sorted(n_grid.begin(), n_grid.end())) {
        throw DomainError("scaling_study: n grid must be ascending");
    }
    const RegimeLimits lim = limiting_values(params);
    std::vector<ScalingRecord> out;
    out.reserve(n_grid.size());
    for (std::int64_t n : n_grid) {
        ScalingRecord rec{};
        rec.n = n;
        rec.exact = exact_derivatives(params, n);
        // Each grid point gets its own stream family.
        rec.mc = mc_estimates(params, n, replicas, seed ^ (static_cast<std::uint64_t>(n) * kGolden),
                              threads);
        const double scale = std::pow(static_cast<double>(n), lim.scale_exponent);
        rec.predicted_var_edge = lim.var_edge * scale;
        rec.predicted_var_star = lim.var_star * scale;
        rec.predicted_cov = lim.cov * scale;
        rec.scale_exponent = lim.scale_exponent;
        out.push_back(rec);
    }
    return out;
}

double loglog_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw DomainError("loglog_slope: need at least two paired points");
    }
    const double k = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += std::log(xs[i]);
        my += std::log(ys[i]);
    }
    mx /= k;
    my /= k;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = std::log(xs[i]) - mx;
        sxy += dx * (std::log(ys[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

}  // namespace ergm
