#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "predel/rng.hpp"
#include "predel/sample.hpp"

namespace predel {

/// Pre-sample iterations of the error recursion before the first emitted
/// observation, enough to wash out the zero initialization for every
/// stationary coefficient set used in practice.
inline constexpr std::size_t kErrorBurnIn = 500;

/// @brief Simulation design for one Monte Carlo cell.
///
/// The slope of the generated regression is a / sqrt(n): `a` parameterizes
/// local alternatives, so a = 0 is the null regardless of n. nu is the
/// Student-t tail index of the second innovation (nu <= 2 gives infinite
/// variance on purpose); delta couples the two innovations; phi = 1 makes
/// the predictor a unit-root process.
struct DgpConfig {
  std::size_t n = 100;
  double a = 0.0;
  double alpha = 0.0;
  double theta = 0.0;
  double phi = 1.0;
  std::vector<double> b;
  double nu = 4.0;
  double delta = -0.75;
  double x0 = 0.0;
  std::uint64_t seed = 0;
};

/// True when the AR recursion e_t = b_1 e_{t-1} + ... + b_p e_{t-p} + v_t is
/// stationary, i.e. all characteristic roots lie inside the unit circle.
/// Uses the step-down (reverse Levinson) recursion: stationarity holds iff
/// every reflection coefficient has magnitude below one.
inline bool ar_stationary(std::span<const double> b) {
  std::vector<double> a(b.begin(), b.end());
  for (std::size_t p = a.size(); p > 0; --p) {
    const double k = a[p - 1];
    if (!(std::fabs(k) < 1.0)) return false;
    // Durbin-Levinson down-date: peel off the order-p reflection coefficient.
    const double denom = 1.0 - k * k;
    std::vector<double> next(p - 1);
    for (std::size_t i = 0; i + 1 < p; ++i) next[i] = (a[i] + k * a[p - 2 - i]) / denom;
    a = std::move(next);
  }
  return true;
}

inline void validate(const DgpConfig& c) {
  if (c.n < 4)
    throw std::invalid_argument("DgpConfig: n must be at least 4, got " + std::to_string(c.n));
  if (!(c.nu > 0.0) || !std::isfinite(c.nu))
    throw std::invalid_argument("DgpConfig: nu must be positive and finite");
  if (!(std::fabs(c.delta) <= 1.0))
    throw std::invalid_argument("DgpConfig: delta must lie in [-1, 1]");
  for (double v : {c.a, c.alpha, c.theta, c.phi, c.x0})
    if (!std::isfinite(v)) throw std::invalid_argument("DgpConfig: non-finite parameter");
  for (double bi : c.b)
    if (!std::isfinite(bi)) throw std::invalid_argument("DgpConfig: non-finite AR coefficient");
  if (!ar_stationary(c.b))
    throw std::invalid_argument("DgpConfig: error AR coefficients are not stationary");
}

/// @brief One correlated innovation pair (U, V).
///
/// U is standard normal. V = delta * U + c * eps with eps Student-t(nu),
/// where c = sqrt((1 - delta^2) * (nu - 2) / nu) standardizes V to unit
/// variance when nu > 2; for nu <= 2 the t variance is infinite, no
/// standardization exists, and c = sqrt term is replaced by 1.
inline std::pair<double, double> draw_innovation_pair(const DgpConfig& c, Engine& rng) {
  const double u = draw_normal(rng);
  const double eps = draw_student_t(c.nu, rng);
  const double coef =
      c.nu > 2.0 ? std::sqrt((1.0 - c.delta * c.delta) * (c.nu - 2.0) / c.nu)
                 : 1.0;
  return {u, c.delta * u + coef * eps};
}

/// @brief Generates one sample from the design.
///
/// The error recursion runs kErrorBurnIn steps from zero lags first
/// (discarding the paired U draws to keep the stream layout uniform), then
///   X_t = theta + phi X_{t-1} + e_t       from X_0 = x0,
///   Y_t = alpha + (a / sqrt(n)) X_{t-1} + U_t,
/// for t = 1..n. Identical configs (seed included) produce identical
/// samples; the replication harness derives per-replication seeds instead
/// of sharing one engine.
inline RegressionSample gen_sample(const DgpConfig& c) {
  validate(c);
  Engine rng = make_engine(c.seed);
  const std::size_t p = c.b.size();
  std::vector<double> elag(p, 0.0);  // elag[i] = e_{t-1-i}

  const auto step_error = [&](double v) {
    double e = v;
    for (std::size_t i = 0; i < p; ++i) e += c.b[i] * elag[i];
    for (std::size_t i = p; i-- > 1;) elag[i] = elag[i - 1];
    if (p > 0) elag[0] = e;
    return e;
  };

  for (std::size_t t = 0; t < kErrorBurnIn; ++t) step_error(draw_innovation_pair(c, rng).second);

  RegressionSample s;
  s.x.resize(c.n + 1);
  s.y.resize(c.n);
  s.x[0] = c.x0;
  const double beta = c.a / std::sqrt(static_cast<double>(c.n));
  for (std::size_t t = 1; t <= c.n; ++t) {
    const auto [u, v] = draw_innovation_pair(c, rng);
    s.x[t] = c.theta + c.phi * s.x[t - 1] + step_error(v);
    s.y[t - 1] = c.alpha + beta * s.x[t - 1] + u;
  }
  return s;
}

}  // namespace predel
