#pragma once

#include <stdexcept>
#include <string>

namespace fdnoma {

/// Invalid user-supplied configuration (bad parameter, unknown scenario key, ...).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical routine could not reach its requested accuracy.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Adaptive quadrature hit its subdivision limit. Carries the best estimate
/// seen so that callers can decide whether it is usable.
class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double best_estimate, double error_estimate)
      : NumericalError(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

}  // namespace fdnoma
