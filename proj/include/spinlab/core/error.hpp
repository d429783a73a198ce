#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spinlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: wrong shapes, unknown sites, malformed configs.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Dense-matrix budget exceeded.
class SizeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// The numerics ran but the requested object does not exist (closed gap,
// unresolved patch, eigensolver failure, unusable fit data).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class PatchNotIsolatedError : public NumericalError {
 public:
  PatchNotIsolatedError(const std::string& what, std::vector<double> head)
      : NumericalError(what), spectrum_head(std::move(head)) {}
  std::vector<double> spectrum_head;
};

class GapClosedError : public NumericalError {
 public:
  GapClosedError(const std::string& what, double at_lambda, double gap,
                 double gamma)
      : NumericalError(what), lambda(at_lambda), patch_gap(gap), gamma(gamma) {}
  double lambda;
  double patch_gap;
  double gamma;
};

}  // namespace spinlab
