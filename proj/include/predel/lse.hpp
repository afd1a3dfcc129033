#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "predel/errors.hpp"
#include "predel/sample.hpp"

namespace predel {

namespace detail {

/// Slope of the with-intercept least-squares line of resp on lag, computed
/// by the textbook ratio (n * S_xy - S_x * S_y) / (n * S_xx - S_x^2).
inline double lse_slope(std::span<const double> resp, std::span<const double> lag) {
  const std::size_t n = resp.size();
  if (n != lag.size() || n < 2)
    throw std::invalid_argument("lse_slope: need matching series of length >= 2");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += lag[i];
    sy += resp[i];
    sxx += lag[i] * lag[i];
    sxy += lag[i] * resp[i];
  }
  const double nn = static_cast<double>(n);
  const double den = nn * sxx - sx * sx;
  if (!(den > 8.0 * std::numeric_limits<double>::epsilon() * nn * sxx))
    throw DegenerateSampleError("lse_slope: predictor is (numerically) constant");
  return (nn * sxy - sx * sy) / den;
}

/// With-intercept simple OLS via centered sums; fills residuals.
struct Ols2 {
  double intercept = 0.0;
  double slope = 0.0;
};

inline Ols2 ols2(std::span<const double> resp, std::span<const double> lag,
                 std::vector<double>& resid) {
  const std::size_t n = resp.size();
  double xm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xm += lag[i];
    ym += resp[i];
  }
  xm /= static_cast<double>(n);
  ym /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lag[i] - xm) * (lag[i] - xm);
    sxy += (lag[i] - xm) * (resp[i] - ym);
  }
  if (!(sxx > 0.0))
    throw DegenerateSampleError("ols2: regressor is constant, design is rank deficient");
  Ols2 f;
  f.slope = sxy / sxx;
  f.intercept = ym - f.slope * xm;
  resid.resize(n);
  for (std::size_t i = 0; i < n; ++i) resid[i] = resp[i] - f.intercept - f.slope * lag[i];
  return f;
}

}  // namespace detail

/// @brief Least-squares slope estimate of the predictive regression.
///
/// Regresses Y_t on X_{t-1} with an intercept, t = 1..n, and returns the
/// slope only. Throws DegenerateSampleError when the lagged predictor is
/// constant.
inline double lse_beta(const RegressionSample& s) {
  validate(s, InterceptMode::Known);
  const std::size_t n = s.y.size();
  return detail::lse_slope(s.y, std::span<const double>(s.x.data(), n));
}

/// Full fitted companion model: the response equation, the predictor AR(1)
/// in levels, and an AR(p) on the predictor-equation errors. u_resid has
/// one entry per observation t = 1..n; v_resid covers t = p+1..n.
struct LseFit {
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  double theta_hat = 0.0;
  double phi_hat = 0.0;
  std::vector<double> b_hat;
  std::vector<double> u_resid;
  std::vector<double> v_resid;
  double sigma_u = 0.0;
  double sigma_v = 0.0;
};

/// @brief Fits Y_t = alpha + beta X_{t-1} + U_t, X_t = theta + phi X_{t-1} + e_t,
///        and e_t = b_1 e_{t-1} + ... + b_p e_{t-p} + V_t (no intercept).
///
/// Residual scales are df-corrected per regression: sigma_u over n - 2,
/// sigma_v over (n - p) - p for p >= 1 and over n - 2 when p = 0 (the
/// predictor-equation residuals then are the V's).
inline LseFit fit_full_model(const RegressionSample& s, std::size_t p) {
  validate(s, InterceptMode::Known);
  const std::size_t n = s.y.size();
  if (n < p + 4)
    throw std::invalid_argument("fit_full_model: need n >= p + 4 observations, got n=" +
                                std::to_string(n));
  LseFit fit;

  const std::span<const double> xlag(s.x.data(), n);
  const detail::Ols2 yeq = detail::ols2(s.y, xlag, fit.u_resid);
  fit.alpha_hat = yeq.intercept;
  fit.beta_hat = yeq.slope;

  std::vector<double> e_resid;
  const std::span<const double> xlev(s.x.data() + 1, n);
  const detail::Ols2 xeq = detail::ols2(xlev, xlag, e_resid);
  fit.theta_hat = xeq.intercept;
  fit.phi_hat = xeq.slope;

  double rss_u = 0.0;
  for (double u : fit.u_resid) rss_u += u * u;
  fit.sigma_u = std::sqrt(rss_u / static_cast<double>(n - 2));

  if (p == 0) {
    fit.v_resid = e_resid;
    double rss_v = 0.0;
    for (double v : fit.v_resid) rss_v += v * v;
    fit.sigma_v = std::sqrt(rss_v / static_cast<double>(n - 2));
    return fit;
  }

  // AR(p) without intercept by normal equations; p is small (the study uses
  // p = 1), so Gaussian elimination with partial pivoting is plenty.
  std::vector<double> gram(p * p, 0.0), rhs(p, 0.0);
  for (std::size_t t = p; t < n; ++t) {
    for (std::size_t i = 0; i < p; ++i) {
      rhs[i] += e_resid[t] * e_resid[t - 1 - i];
      for (std::size_t j = 0; j <= i; ++j)
        gram[i * p + j] += e_resid[t - 1 - i] * e_resid[t - 1 - j];
    }
  }
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) gram[i * p + j] = gram[j * p + i];

  double scale = 0.0;
  for (std::size_t i = 0; i < p; ++i) scale = std::max(scale, std::fabs(gram[i * p + i]));
  fit.b_hat.assign(p, 0.0);
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < p; ++r)
      if (std::fabs(gram[r * p + col]) > std::fabs(gram[piv * p + col])) piv = r;
    if (std::fabs(gram[piv * p + col]) <= 1e-14 * scale)
      throw DegenerateSampleError("fit_full_model: AR design is rank deficient");
    if (piv != col) {
      for (std::size_t c = 0; c < p; ++c) std::swap(gram[piv * p + c], gram[col * p + c]);
      std::swap(rhs[piv], rhs[col]);
    }
    for (std::size_t r = col + 1; r < p; ++r) {
      const double f = gram[r * p + col] / gram[col * p + col];
      for (std::size_t c = col; c < p; ++c) gram[r * p + c] -= f * gram[col * p + c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t i = p; i-- > 0;) {
    double v = rhs[i];
    for (std::size_t j = i + 1; j < p; ++j) v -= gram[i * p + j] * fit.b_hat[j];
    fit.b_hat[i] = v / gram[i * p + i];
  }

  fit.v_resid.resize(n - p);
  double rss_v = 0.0;
  for (std::size_t t = p; t < n; ++t) {
    double pred = 0.0;
    for (std::size_t i = 0; i < p; ++i) pred += fit.b_hat[i] * e_resid[t - 1 - i];
    fit.v_resid[t - p] = e_resid[t] - pred;
    rss_v += fit.v_resid[t - p] * fit.v_resid[t - p];
  }
  const std::size_t df = n - p > p ? n - 2 * p : 1;
  fit.sigma_v = std::sqrt(rss_v / static_cast<double>(df));
  return fit;
}

}  // namespace predel
