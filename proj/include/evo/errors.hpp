#pragma once

#include <stdexcept>
#include <string>

namespace evo {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotNaturalBasis : public Error {
 public:
  NotNaturalBasis() : Error("basis change does not preserve the natural basis (e'1 e'2 != 0)") {}
};

class SingularChange : public Error {
 public:
  SingularChange() : Error("basis change is singular (det = 0)") {}
};

class InvalidE6Params : public Error {
 public:
  InvalidE6Params() : Error("E6 parameters must satisfy 1 - a2*a3 != 0") {}
};

/// The numeric isomorphism search reached a small but non-certifying residual.
class Inconclusive : public Error {
 public:
  explicit Inconclusive(double residual)
      : Error("isomorphism search inconclusive (best residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace evo
