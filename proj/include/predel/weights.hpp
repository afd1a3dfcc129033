#pragma once

#include <cmath>
#include <stdexcept>

namespace predel {

/// @brief Score damping weight w(t) = (1 + |t|^h)^(1/h), h > 0.
///
/// Every member satisfies w(t) >= max(1, |t|) and w(t)/|t| -> 1 as
/// |t| -> infinity, which is what tames heavy-tailed and near-integrated
/// predictors: a weighted score can never exceed the raw residual in
/// magnitude. h = 2 (the default) is the familiar sqrt(1 + t^2).
struct WeightSpec {
  double h;

  explicit WeightSpec(double exponent = 2.0) : h(exponent) {
    if (!(h > 0.0) || !std::isfinite(h))
      throw std::invalid_argument("WeightSpec: exponent h must be positive and finite");
  }

  double operator()(double t) const {
    if (h == 2.0) return std::hypot(1.0, t);
    const double a = std::fabs(t);
    // Factored form for a >= 1 so |t|^h cannot overflow for large t.
    if (a >= 1.0) return a * std::pow(1.0 + std::pow(1.0 / a, h), 1.0 / h);
    return std::pow(1.0 + std::pow(a, h), 1.0 / h);
  }
};

}  // namespace predel
