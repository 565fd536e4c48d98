#pragma once

#include <stdexcept>
#include <string>

namespace ringent {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ring too large for the 64-bit basis mask, or a sector too large to store.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented invariant (norm, constraint, symmetry, PSD).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The requested (N, p) admits no state under the adjacency constraint.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Sector with no basis states.
class EmptySectorError : public Error {
 public:
  using Error::Error;
};

/// Configuration outside the supported model scope (e.g. odd Heisenberg rings).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Density matrix is not of the expected block shape.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver gave up; carries the best residual reached.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace ringent
