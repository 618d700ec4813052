#pragma once

#include <stdexcept>
#include <string>

namespace q4 {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (kappa <= 1, psi <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a point where an expression is singular (psi = 0 for the rational integral).
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Rational-function pole hit (residue denominator, derivative formulas at critical levels).
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Level too close to the center or saddle value for a closed oval to be usable.
class DegenerateLevelError : public Error {
 public:
  using Error::Error;
};

/// Level-curve construction failed (ray did not bracket, curve not star-shaped, ...).
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Adaptive refinement stalled before reaching the requested tolerance.
class NonconvergenceError : public Error {
 public:
  using Error::Error;
};

/// The Picard-Fuchs coefficient matrix is numerically singular.
class SingularMatrixError : public Error {
 public:
  SingularMatrixError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// An integration path crosses or touches a singular point of the linear system.
class SingularityCrossingError : public Error {
 public:
  using Error::Error;
};

/// A continuation path comes closer than the allowed distance to a singular point.
class ProximityError : public Error {
 public:
  using Error::Error;
};

/// The step size of an adaptive integrator collapsed.
class StepUnderflowError : public Error {
 public:
  using Error::Error;
};

/// Exact symbolic bookkeeping did not cancel the way it must.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Orbit left the region of validity (blow-up or exit from the domain of the first integral).
class OrbitError : public Error {
 public:
  using Error::Error;
};

}  // namespace q4
