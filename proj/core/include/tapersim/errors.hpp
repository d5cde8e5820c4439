#ifndef TAPERSIM_ERRORS_HPP
#define TAPERSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tapersim {

/// Bad user input: malformed config files, invalid CLI arguments,
/// violated operation preconditions. Maps to CLI exit code 2.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// The model produced no usable physics: maps to CLI exit code 3.
class physics_error : public std::runtime_error {
public:
  explicit physics_error(const std::string& what) : std::runtime_error(what) {}
};

/// A profile supports no guided mode at the requested wavelength.
class cutoff_error : public physics_error {
public:
  explicit cutoff_error(const std::string& what) : physics_error(what) {}
};

/// An iterative solve ran out of its iteration budget. Carries the
/// last residual so callers can decide whether the result is usable.
class convergence_error : public physics_error {
public:
  convergence_error(const std::string& what, double last_residual)
      : physics_error(what), last_residual_(last_residual) {}
  double last_residual() const { return last_residual_; }

private:
  double last_residual_;
};

} // namespace tapersim

#endif
