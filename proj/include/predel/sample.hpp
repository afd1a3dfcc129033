#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace predel {

/// Whether the response equation is known to pass through the origin or
/// carries an unknown intercept that must be differenced away.
enum class InterceptMode { Known, Unknown };

/// @brief One observed predictive-regression sample.
///
/// x holds the predictor levels X_0, ..., X_n (n + 1 values); y holds the
/// responses Y_1, ..., Y_n. Observation t pairs y[t-1] with the lagged
/// predictor x[t-1], so x.back() is the final level that no response uses.
struct RegressionSample {
  std::vector<double> x;
  std::vector<double> y;

  std::size_t n() const { return y.size(); }
};

/// Validates shape and finiteness. Unknown-intercept inference halves the
/// sample, hence the larger floor there.
inline void validate(const RegressionSample& s, InterceptMode mode) {
  const std::size_t n = s.y.size();
  if (s.x.size() != n + 1)
    throw std::invalid_argument(
        "RegressionSample: x must hold exactly one more value than y (levels "
        "X_0..X_n), got x.size()=" +
        std::to_string(s.x.size()) + " y.size()=" + std::to_string(n));
  const std::size_t floor = mode == InterceptMode::Unknown ? 4 : 2;
  if (n < floor)
    throw std::invalid_argument("RegressionSample: need at least " +
                                std::to_string(floor) + " observations, got " +
                                std::to_string(n));
  for (double v : s.x)
    if (!std::isfinite(v))
      throw std::invalid_argument("RegressionSample: non-finite predictor value");
  for (double v : s.y)
    if (!std::isfinite(v))
      throw std::invalid_argument("RegressionSample: non-finite response value");
}

}  // namespace predel
