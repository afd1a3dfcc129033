#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace predel {

/// @brief Survival function of the chi-square law with one degree of freedom.
///
/// For one degree of freedom the survival function reduces exactly to
/// erfc(sqrt(x/2)), so no incomplete-gamma machinery is needed.
///
/// @param x nonnegative abscissa; +infinity is allowed and maps to 0.
/// @return P(X > x), in [0, 1].
inline double chi1_sf(double x) {
  if (std::isnan(x) || x < 0.0)
    throw std::invalid_argument("chi1_sf: x must be nonnegative");
  if (std::isinf(x)) return 0.0;
  return std::erfc(std::sqrt(0.5 * x));
}

/// @brief Inverse survival function of chi-square(1).
///
/// Solves chi1_sf(x) = q for x >= 0. Root-finding runs in t = sqrt(x/2)
/// space where erfc is strictly decreasing: bisection narrows a bracket to
/// the last representable interval, so the round trip chi1_isf(chi1_sf(x))
/// reproduces x to a few ulps across the whole support. Preferred over
/// chi1_quantile for upper-tail work, where forming 1 - p would round.
///
/// @param q tail probability in (0, 1].
inline double chi1_isf(double q) {
  if (!(q > 0.0) || !(q <= 1.0))
    throw std::invalid_argument("chi1_isf: q must lie in (0, 1]");
  if (q == 1.0) return 0.0;

  double lo = 0.0;  // erfc(lo) = 1 > q
  double hi = 1.0;
  while (std::erfc(hi) >= q) {
    hi *= 2.0;
    if (hi > 64.0) break;  // erfc underflows long before this
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket is one ulp wide
    if (std::erfc(mid) >= q)
      lo = mid;
    else
      hi = mid;
  }
  const double t = 0.5 * (lo + hi);
  return 2.0 * t * t;
}

/// Lower-tail quantile: the x with P(X <= x) = p, p in (0, 1).
/// chi1_quantile(0.90) ~ 2.705543, chi1_quantile(0.95) ~ 3.841459.
inline double chi1_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::invalid_argument("chi1_quantile: p must lie in (0, 1)");
  return chi1_isf(1.0 - p);
}

}  // namespace predel
