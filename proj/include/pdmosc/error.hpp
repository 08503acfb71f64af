#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pdmosc {

enum class ErrorKind {
  DegreeOverflow,
  Pole,
  NonConvergence,
  NegativeDiscriminant,
  Domain,
  NonNormalizable,
  NonPhysical,
  NonPositiveZ,
  Config,
};

std::string_view to_string(ErrorKind kind);

/// Structured failure raised by every module of the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Adaptive quadrature gave up; carries the best available estimate.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double estimate, double error_bound)
      : Error(ErrorKind::NonConvergence, what),
        estimate_(estimate),
        error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

}  // namespace pdmosc
