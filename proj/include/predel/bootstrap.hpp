#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "predel/chi_square.hpp"
#include "predel/errors.hpp"
#include "predel/lse.hpp"
#include "predel/parallel.hpp"
#include "predel/rng.hpp"
#include "predel/sample.hpp"

namespace predel {

/// Outcome of the residual-bootstrap least-squares test. se is the standard
/// deviation of the resampled slope estimates and [lower, upper] is the
/// normal-approximation interval beta_hat -+ z * se at the requested level;
/// degenerate_resamples counts resamples whose regenerated predictor was
/// constant (excluded from se, never silently), and degenerate_warning
/// latches when they exceed 1% of B.
struct BootstrapTestResult {
  bool reject = false;
  double beta_hat = 0.0;
  double se = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t degenerate_resamples = 0;
  bool degenerate_warning = false;
};

/// @brief Residual bootstrap test of H0: slope = beta0 based on the LSE.
///
/// Fits the full companion model (response equation, predictor AR(1), AR(p)
/// error recursion), then B times: resamples paired residuals (U, V) with
/// replacement from the common window t = p+1..n, regenerates a sample of
/// size n - 1 through the fitted recursions (error lags start at zero,
/// X*_0 = X_0), and re-estimates the slope on the regenerated pairs
/// (Y*_2..Y*_{n-1} on X*_1..X*_{n-2}). The resampled slopes calibrate a
/// normal approximation: with se their standard deviation and z the
/// two-sided normal critical value sqrt(chi1_quantile(1 - level)), the test
/// rejects at significance `level` when |beta_hat - beta0| > z * se. The
/// spread alone comes from the bootstrap; centering the interval at
/// beta_hat rather than at the resampled-slope quantiles keeps the
/// estimator's own small-sample bias from being counted twice.
///
/// Deterministic in (sample, p, level, B, seed): resample j draws from an
/// engine seeded by child_seed(seed, j), so the thread count never changes
/// the result.
inline BootstrapTestResult bootstrap_lse_test(const RegressionSample& s, std::size_t p,
                                              double level, std::size_t B,
                                              std::uint64_t seed, unsigned threads = 1,
                                              double beta0 = 0.0) {
  if (!(level > 0.0) || !(level < 1.0))
    throw std::invalid_argument("bootstrap_lse_test: level must lie in (0, 1)");
  if (B < 100)
    throw std::invalid_argument("bootstrap_lse_test: need at least 100 resamples");
  if (!std::isfinite(beta0))
    throw std::invalid_argument("bootstrap_lse_test: beta0 must be finite");
  const LseFit fit = fit_full_model(s, p);
  const std::size_t n = s.y.size();
  const std::size_t pool = n - p;  // paired (U, V) residuals share t = p+1..n

  std::vector<double> betas(B, std::numeric_limits<double>::quiet_NaN());
  parallel_for(B, threads, [&](std::size_t j) {
    Engine rng = make_engine(child_seed(seed, j));
    std::uniform_int_distribution<std::size_t> pick(0, pool - 1);
    const std::size_t m = n - 1;
    std::vector<double> xs(m + 1), ys(m), elag(p, 0.0);
    xs[0] = s.x[0];
    for (std::size_t t = 1; t <= m; ++t) {
      const std::size_t idx = pick(rng);
      const double u = fit.u_resid[p + idx];
      const double v = fit.v_resid[idx];
      double e = v;
      for (std::size_t i = 0; i < p; ++i) e += fit.b_hat[i] * elag[i];
      for (std::size_t i = p; i-- > 1;) elag[i] = elag[i - 1];
      if (p > 0) elag[0] = e;
      xs[t] = fit.theta_hat + fit.phi_hat * xs[t - 1] + e;
      ys[t - 1] = fit.alpha_hat + fit.beta_hat * xs[t - 1] + u;
    }
    try {
      betas[j] = detail::lse_slope(std::span<const double>(ys.data() + 1, n - 2),
                                   std::span<const double>(xs.data() + 1, n - 2));
    } catch (const DegenerateSampleError&) {
      // leave NaN: counted below
    }
  });

  BootstrapTestResult out;
  out.beta_hat = fit.beta_hat;
  std::vector<double> valid;
  valid.reserve(B);
  for (double b : betas)
    if (std::isnan(b))
      ++out.degenerate_resamples;
    else
      valid.push_back(b);
  if (valid.empty())
    throw DegenerateSampleError("bootstrap_lse_test: every resample was degenerate");
  out.degenerate_warning = out.degenerate_resamples * 100 > B;
  double mean = 0.0;
  for (double b : valid) mean += b;
  mean /= static_cast<double>(valid.size());
  double ss = 0.0;
  for (double b : valid) ss += (b - mean) * (b - mean);
  out.se = valid.size() > 1
               ? std::sqrt(ss / static_cast<double>(valid.size() - 1))
               : 0.0;
  const double z = std::sqrt(chi1_quantile(1.0 - level));
  out.lower = out.beta_hat - z * out.se;
  out.upper = out.beta_hat + z * out.se;
  out.reject = beta0 < out.lower || beta0 > out.upper;
  return out;
}

}  // namespace predel
