#pragma once

// Helpers shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "polyentropy/estimators.hpp"

namespace testing_support {

inline double poisson_pmf(double mean, std::uint64_t j) {
  if (mean == 0.0) {
    return j == 0 ? 1.0 : 0.0;
  }
  const double jd = static_cast<double>(j);
  return std::exp(-mean + jd * std::log(mean) - std::lgamma(jd + 1.0));
}

/// sum_j g_L(j) Poi(mean, j). The tail is cut once j is past the mean and
/// pmf(j) max(1, |g_L(j)|) has dropped below 1e-20: g_L grows polynomially,
/// so a cut on probability mass alone would drop non-negligible terms.
inline double expected_poly_term(const polyentropy::PolyEstimatorTable& t, double mean) {
  double sum = 0.0;
  for (std::uint64_t j = 0;; ++j) {
    const double g = polyentropy::poly_estimate_term(j, t);
    const double p = poisson_pmf(mean, j);
    sum += g * p;
    if (static_cast<double>(j) > mean + 10.0 && p * std::max(1.0, std::abs(g)) < 1e-20) {
      return sum;
    }
  }
}

}  // namespace testing_support
