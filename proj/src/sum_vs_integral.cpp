#include <cmath>
#include <numbers>

#include "ergm/asymptotics.hpp"
#include "ergm/errors.hpp"
#include "ergm/exact_ensemble.hpp"

namespace ergm {

SumIntegralComparison sum_vs_integral(const ModelParams& params, std::int64_t n, int k) {
    if (n < 10) {
        throw DomainError("sum_vs_integral: n must be >= 10");
    }
    const int p = params.p();
    if (!(k == 0 || k == 1 || k == 2 || k == p || k == p + 1 || k == 2 * p)) {
        throw DomainError("sum_vs_integral: k must be one of 0, 1, 2, p, p+1, 2p");
    }
    const double nd = static_cast<double>(n);
    const TiltedBinomial tb(params, n);
    SumIntegralComparison out{};
    out.log_exact = tb.log_tilted_moment(k);
    out.log_approx = k * std::log(nd) - nd * std::numbers::ln2 +
                     0.5 * std::log(nd / (2.0 * std::numbers::pi)) +
                     quadrature_integral(params, n, k);
    out.ratio = std::exp(out.log_exact - out.log_approx);
    return out;
}

}  // namespace ergm
