#pragma once

#include <stdexcept>
#include <string>

namespace predel {

/// Sample admits no usable inference: every lagged predictor is zero, a
/// regression denominator vanishes, or all bootstrap resamples collapse.
class DegenerateSampleError : public std::runtime_error {
 public:
  explicit DegenerateSampleError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative routine exhausted its budget without meeting tolerance.
/// Distinct from DegenerateSampleError: the problem was well posed, the
/// solver failed. Seeing this thrown is a bug report, not a data property.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace predel
