#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "predel/chi_square.hpp"
#include "predel/el.hpp"
#include "predel/errors.hpp"

namespace predel {

/// Level-b confidence set for the slope, reported as its bracketing
/// interval [lower, upper]. disconnected is true when the 512-point
/// verification scan found the underlying set {beta : l(beta) <= q} to
/// disagree with the interval (an interior point above the quantile or an
/// exterior point below it); the interval endpoints are still the outermost
/// boundary crossings found.
struct ConfidenceSet {
  double level = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool disconnected = false;
};

namespace detail {

/// Ratio statistic as a function of beta over a fixed effective series.
/// Returns +infinity when the hull condition fails at this beta.
class RatioCurve {
 public:
  RatioCurve(EffectiveSeries series, WeightSpec weight)
      : series_(std::move(series)), weight_(weight) {}

  double operator()(double beta) const {
    scores_into(series_, beta, weight_, buf_);
    const DualSolution dual = solve_lagrange(buf_);
    if (!dual.hull_ok) return std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (double z : buf_) acc += std::log1p(dual.lambda * z);
    return std::max(0.0, 2.0 * acc);
  }

  const EffectiveSeries& series() const { return series_; }

 private:
  EffectiveSeries series_;
  WeightSpec weight_;
  mutable std::vector<double> buf_;
};

/// One boundary crossing of {l <= q}, searched in direction dir from the
/// interior point start. The curve is continuous wherever finite and jumps
/// to +infinity past the extreme score ratios, so the crossing is bracketed
/// by doubling and then bisected. Returns the crossing to statistic
/// tolerance 1e-8 where the curve is continuous, or the innermost
/// representable point still inside the set where it jumps.
inline double ci_endpoint(const RatioCurve& curve, double start, double dir, double q) {
  double step = 1e-6 * (1.0 + std::fabs(start));
  double inside = start;
  double outside = 0.0;
  bool bracketed = false;
  for (int i = 0; i < 1100; ++i) {
    const double cand = start + dir * step;
    if (curve(cand) > q) {
      outside = cand;
      bracketed = true;
      break;
    }
    inside = cand;
    step *= 2.0;
  }
  if (!bracketed)
    throw DegenerateSampleError(
        "confidence_set: no finite confidence bound in search direction");
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;  // one-ulp bracket: a jump point
    const double s = curve(mid);
    if (std::fabs(s - q) <= 1e-8) return mid;
    if (s > q)
      outside = mid;
    else
      inside = mid;
  }
  return inside;
}

}  // namespace detail

/// @brief Confidence set {beta : l_n(beta) <= chi-square(1) quantile of order level}.
///
/// The search is anchored at the weighted estimating-equation root
/// beta* = sum(resp*lag/w) / sum(lag^2/w), where the ratio statistic attains
/// (up to roundoff) its zero minimum; the set is expanded outward from
/// beta* by doubling steps and each boundary located by bisection. Endpoint
/// tolerance: |l(endpoint) - q| <= 1e-8 where l crosses q continuously,
/// otherwise the endpoint is the last representable beta inside the set
/// (noiseless samples collapse the set to one point this way).
///
/// A final 512-point scan over [lower - width, upper + width] cross-checks
/// the interval against the set and records any disagreement in
/// `disconnected` rather than hiding it.
///
/// Throws DegenerateSampleError when every lagged predictor is zero (every
/// beta fits equally well, so no bounded set exists).
inline ConfidenceSet confidence_set(const RegressionSample& s, double level = 0.90,
                                    const WeightSpec& weight = WeightSpec(),
                                    InterceptMode mode = InterceptMode::Unknown) {
  if (!(level > 0.0) || !(level < 1.0))
    throw std::invalid_argument("confidence_set: level must lie in (0, 1)");
  validate(s, mode);
  const double q = chi1_quantile(level);

  detail::RatioCurve curve(detail::effective_series(s, mode), weight);
  double sum_c = 0.0, sum_d = 0.0;
  const detail::EffectiveSeries& es = curve.series();
  for (std::size_t i = 0; i < es.lag.size(); ++i) {
    const double xl = es.lag[i];
    const double w = weight(xl);
    sum_c += es.resp[i] * xl / w;
    sum_d += xl * xl / w;
  }
  if (sum_d == 0.0)
    throw DegenerateSampleError(
        "confidence_set: all lagged predictors are zero; slope is unidentified");

  const double beta_star = sum_c / sum_d;
  if (!(curve(beta_star) <= q))
    throw DegenerateSampleError(
        "confidence_set: ratio statistic exceeds the quantile at its own minimizer");

  ConfidenceSet out;
  out.level = level;
  out.lower = detail::ci_endpoint(curve, beta_star, -1.0, q);
  out.upper = detail::ci_endpoint(curve, beta_star, +1.0, q);

  const double width = out.upper - out.lower;
  const double left = out.lower - width;
  const double span = 3.0 * width;
  constexpr int kScanPoints = 512;
  constexpr double kPad = 1e-6;  // statistic-scale slack over the 1e-8 endpoint tolerance
  for (int i = 0; i < kScanPoints; ++i) {
    const double beta = left + span * static_cast<double>(i) / (kScanPoints - 1);
    const double stat = curve(beta);
    const bool interior = beta > out.lower && beta < out.upper;
    const bool exterior = beta < out.lower || beta > out.upper;
    if ((interior && stat > q + kPad) || (exterior && stat < q - kPad)) {
      out.disconnected = true;
      break;
    }
  }
  return out;
}

}  // namespace predel
