#pragma once

#include <stdexcept>
#include <string>

namespace starkphase {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (negative width, unsorted samples, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Gamma-function argument at (or within 1e-14 of) a nonpositive integer.
class PoleError : public Error {
 public:
  using Error::Error;
};

class ZeroDetuningError : public Error {
 public:
  using Error::Error;
};

/// Gaussian adiabatic threshold needs ln(Omega0 T) > 0.
class ThresholdUndefined : public Error {
 public:
  using Error::Error;
};

/// 4 Delta2 Delta3 - Omega23^2 changes sign inside the pulse window.
class TwoPhotonPoleError : public Error {
 public:
  using Error::Error;
};

/// Cubic in the triple-root vicinity.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Tracked quasienergy branch meets another one.
class BranchCrossError : public Error {
 public:
  using Error::Error;
};

class UnattainableError : public Error {
 public:
  using Error::Error;
};

/// Adaptive step collapsed below 1e-12 T.
class StiffnessError : public Error {
 public:
  using Error::Error;
};

/// Norm not conserved within 100 x rel_tol for a lossless system.
class ToleranceError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

}  // namespace starkphase
