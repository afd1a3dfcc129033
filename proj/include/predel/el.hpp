#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "predel/chi_square.hpp"
#include "predel/errors.hpp"
#include "predel/sample.hpp"
#include "predel/weights.hpp"

namespace predel {

namespace detail {

/// Lag/response pairs actually entering the score, after the mode transform.
/// Known intercept: the sample itself (lag[i] = X_i, resp[i] = Y_{i+1}).
/// Unknown intercept: half-sample differences with m = floor(n/2),
/// lag[i] = X_i - X_{i+m}, resp[i] = Y_{i+1} - Y_{i+1+m} for i = 0..m-1;
/// the intercept cancels in resp and the last observation of an odd-length
/// sample goes unused.
struct EffectiveSeries {
  std::vector<double> lag;
  std::vector<double> resp;
};

inline EffectiveSeries effective_series(const RegressionSample& s, InterceptMode mode) {
  EffectiveSeries e;
  const std::size_t n = s.y.size();
  if (mode == InterceptMode::Known) {
    e.lag.assign(s.x.begin(), s.x.begin() + static_cast<std::ptrdiff_t>(n));
    e.resp = s.y;
    return e;
  }
  const std::size_t m = n / 2;
  e.lag.resize(m);
  e.resp.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    e.lag[i] = s.x[i] - s.x[i + m];
    e.resp[i] = s.y[i] - s.y[i + m];
  }
  return e;
}

inline void scores_into(const EffectiveSeries& e, double beta, const WeightSpec& weight,
                        std::vector<double>& out) {
  const std::size_t m = e.lag.size();
  out.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double xl = e.lag[i];
    out[i] = (e.resp[i] - beta * xl) * xl / weight(xl);
  }
}

}  // namespace detail

/// @brief Weighted estimating-function scores z_t(beta).
///
/// z_t = (resp_t - beta * lag_t) * lag_t / w(lag_t) over the mode's effective
/// series. A zero lag contributes a zero score; it is kept, not dropped, so
/// the score count is determined by n and the mode alone. The weight bound
/// w >= max(1, |lag|) gives |z_t| <= |resp_t - beta * lag_t| elementwise.
inline std::vector<double> weighted_scores(const RegressionSample& s, double beta,
                                           const WeightSpec& weight = WeightSpec(),
                                           InterceptMode mode = InterceptMode::Unknown) {
  validate(s, mode);
  if (!std::isfinite(beta))
    throw std::invalid_argument("weighted_scores: beta must be finite");
  std::vector<double> z;
  detail::scores_into(detail::effective_series(s, mode), beta, weight, z);
  return z;
}

/// Outcome of the inner (dual) optimization. When hull_ok is false the
/// scores all lie weakly on one side of zero, the constrained optimum does
/// not exist, and lambda is meaningless (callers map the statistic to
/// +infinity); lambda is set to NaN in that case.
struct DualSolution {
  double lambda = 0.0;
  bool hull_ok = true;
};

/// @brief Solves the empirical-likelihood dual equation sum z_t / (1 + lambda z_t) = 0.
///
/// The convex-hull condition (some z < 0 and some z > 0, or all exactly
/// zero) is checked first; otherwise no root exists. On the admissible
/// bracket (-1/max z, -1/min z) the dual function is strictly decreasing, so
/// a Newton step is taken when it stays inside the current sign-change
/// bracket and bisection otherwise. Every evaluation point lies strictly
/// inside the bracket; 1 + lambda z_t > 0 is structural, never checked per
/// term. Converges to |g(lambda)| <= 1e-10 * n * max|z| or to a one-ulp
/// bracket; past a 200-iteration budget it throws SolverError.
inline DualSolution solve_lagrange(std::span<const double> scores) {
  if (scores.empty())
    throw std::invalid_argument("solve_lagrange: score vector is empty");
  double zmin = scores[0], zmax = scores[0];
  for (double z : scores) {
    zmin = std::min(zmin, z);
    zmax = std::max(zmax, z);
  }
  if (zmin == 0.0 && zmax == 0.0) return {0.0, true};
  if (!(zmin < 0.0) || !(zmax > 0.0))
    return {std::numeric_limits<double>::quiet_NaN(), false};

  const double scale = std::max(-zmin, zmax);
  const double tol = 1e-10 * static_cast<double>(scores.size()) * scale;
  const auto eval = [&scores](double lam, double& g, double& dg) {
    g = 0.0;
    dg = 0.0;
    for (double z : scores) {
      const double r = z / (1.0 + lam * z);
      g += r;
      dg -= r * r;
    }
  };

  constexpr double kInset = 1.0 - 1e-12;
  double lo = -kInset / zmax;  // g(lo) > 0: the +max term dominates
  double hi = -kInset / zmin;  // g(hi) < 0 symmetrically
  double lam = 0.0;            // always a valid interior start
  for (int iter = 0; iter < 200; ++iter) {
    double g, dg;
    eval(lam, g, dg);
    if (std::fabs(g) <= tol) return {lam, true};
    if (g > 0.0)
      lo = lam;
    else
      hi = lam;
    const double width = hi - lo;
    if (width <= std::numeric_limits<double>::epsilon() *
                     std::max({1.0, std::fabs(lo), std::fabs(hi)}))
      return {0.5 * (lo + hi), true};  // root pinned to one ulp; g jumps across it
    const double newton = lam - g / dg;
    lam = (newton > lo && newton < hi) ? newton : 0.5 * (lo + hi);
  }
  throw SolverError("solve_lagrange: dual iteration budget exhausted");
}

/// Full outcome of one empirical-likelihood ratio evaluation.
/// hull_ok == false, statistic == +infinity and p_value == 0 travel
/// together; the infinity is a deliberate sentinel for "beta is outside
/// every achievable score configuration", not an overflow.
struct ElResult {
  double statistic = 0.0;
  double lambda = 0.0;
  bool hull_ok = true;
  double p_value = 1.0;
  InterceptMode mode = InterceptMode::Unknown;
};

/// @brief -2 log empirical-likelihood ratio for H0: slope = beta.
///
/// Computes the weighted scores, solves the dual, and returns
/// 2 * sum log1p(lambda z_t) with its asymptotic chi-square(1) p-value.
/// The statistic is 0 exactly when the scores average to zero (lambda = 0)
/// and +infinity when the convex-hull condition fails.
inline ElResult log_el_ratio(const RegressionSample& s, double beta,
                             const WeightSpec& weight = WeightSpec(),
                             InterceptMode mode = InterceptMode::Unknown) {
  const std::vector<double> z = weighted_scores(s, beta, weight, mode);
  const DualSolution dual = solve_lagrange(z);
  ElResult r;
  r.mode = mode;
  r.hull_ok = dual.hull_ok;
  r.lambda = dual.lambda;
  if (!dual.hull_ok) {
    r.statistic = std::numeric_limits<double>::infinity();
    r.p_value = 0.0;
    return r;
  }
  double acc = 0.0;
  for (double zt : z) acc += std::log1p(dual.lambda * zt);
  r.statistic = std::max(0.0, 2.0 * acc);  // optimum is >= 0; clip dual roundoff
  r.p_value = chi1_sf(r.statistic);
  return r;
}

/// Test decision at a fixed chi-square quantile order.
struct ElTestDecision {
  bool reject = false;
  double critical_value = 0.0;
  ElResult detail;
};

/// @brief Level-`level` empirical-likelihood test of H0: slope = beta0.
///
/// `level` is the chi-square(1) quantile order b in (0, 1): the test rejects
/// when the statistic exceeds chi1_quantile(b), equivalently when the
/// p-value drops below 1 - b. A failed hull condition always rejects.
inline ElTestDecision el_test(const RegressionSample& s, double beta0, double level,
                              const WeightSpec& weight = WeightSpec(),
                              InterceptMode mode = InterceptMode::Unknown) {
  if (!(level > 0.0) || !(level < 1.0))
    throw std::invalid_argument("el_test: level must lie in (0, 1)");
  ElTestDecision d;
  d.critical_value = chi1_quantile(level);
  d.detail = log_el_ratio(s, beta0, weight, mode);
  d.reject = d.detail.statistic > d.critical_value;
  return d;
}

}  // namespace predel
