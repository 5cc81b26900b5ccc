#pragma once

#include <cstdint>
#include <span>

namespace ergm {

// Lanczos approximation (g = 7, 9 terms) with reflection below 1/2.
double gamma_fn(double x);

// log of the Binomial(n, 1/2) pmf at i, via Loader's saddle-point form
// (Stirling remainders plus deviance), accurate to a few ulps in absolute
// terms in the bulk.  Exactly symmetric under i -> n - i.
double log_binomial_half_pmf(std::int64_t n, std::int64_t i);

// Stirling remainder log(k!) - (k + 1/2) log k + k - log sqrt(2 pi), k >= 1.
double stirling_remainder(double k);

// Deviance term x log(x / m) + m - x, evaluated stably near x = m.
double binomial_deviance(double x, double m);

// Max-shifted log(sum exp(v_i)) summed in index order.
double log_sum_exp(std::span<const double> values);

}  // namespace ergm
