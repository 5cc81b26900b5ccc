#pragma once

#include <cmath>
#include <string>

#include "ergm/errors.hpp"

namespace ergm::detail {

// Bisection for a sign change of f on (lo, hi) where the sign of f just
// inside `lo` is known to be `lo_positive` and the opposite holds near `hi`.
// Only interior midpoints are evaluated, so f may be singular at lo and hi.
template <typename F>
double bisect_sign_change(F&& f, double lo, double hi, bool lo_positive, double tol,
                          int max_iter, const char* what) {
    for (int it = 0; it < max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= tol || mid <= lo || mid >= hi) {
            return mid;
        }
        const double fm = f(mid);
        if (fm == 0.0) {
            return mid;
        }
        if ((fm > 0.0) == lo_positive) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw ConvergenceError(std::string(what) + ": bisection did not reach tolerance");
}

}  // namespace ergm::detail
