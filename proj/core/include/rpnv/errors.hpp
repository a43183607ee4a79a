#pragma once

#include <stdexcept>
#include <string>

namespace rpnv {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by a caller-supplied value.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The NV center coincides with a point charge.
class SingularGeometry : public Error {
 public:
  using Error::Error;
};

/// A closed-form model was asked to evaluate outside its regime of validity.
class OutOfRegime : public Error {
 public:
  using Error::Error;
};

/// A numerical kernel did not reach the requested accuracy.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

/// Krylov exponential action failed; carries the residual it did reach.
class KrylovBreakdown : public NumericFailure {
 public:
  KrylovBreakdown(const std::string& what, double residual)
      : NumericFailure(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Exponential rate fit could not be performed on the supplied trace.
class FitFailure : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

}  // namespace rpnv
