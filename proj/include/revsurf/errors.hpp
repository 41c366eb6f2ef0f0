#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace revsurf {

/// Evaluation point outside the declared z-range of a generatrix.
class OutOfDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Generatrix radius f(z) <= 0 where a surface point was requested.
class NonPositiveRadiusError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The fixed-step axial integrator produced a non-finite state.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fewer sign changes than requested roots below the scan ceiling.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested level lies at or below zero energy, so c = rho sqrt(2 m omega)/hbar is not real.
class NonPositiveLevelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NormalizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EigenSolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_estimate_(condition_estimate) {}

  /// Ratio of largest to smallest pivot magnitude seen before failure.
  [[nodiscard]] double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  double condition_estimate_;
};

/// The injection lead carries no propagating wave at the requested energy.
class ClosedChannelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Configuration problem, tagged with the offending line or flag.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& where, const std::string& what)
      : std::invalid_argument(where + ": " + what), where_(where) {}

  [[nodiscard]] const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace revsurf
