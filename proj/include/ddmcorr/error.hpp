#pragma once

#include <stdexcept>
#include <string>

namespace ddmcorr {

/// Invalid input: dimension mismatch, bad parameter, malformed config.
/// Maps to CLI exit code 1.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Loss of numerical integrity during a computation (NaN, trace drift,
/// negative eigenvalues beyond tolerance, eigensolver non-convergence).
/// Maps to CLI exit code 2.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace ddmcorr
