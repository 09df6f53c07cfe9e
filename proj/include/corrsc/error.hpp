#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace corrsc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input (bad mixture, mismatched dimensions, malformed file).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A raw moment overflowed; carries the multi-index that failed.
class MomentOverflow : public Error {
 public:
  MomentOverflow(std::vector<int> gamma, const std::string& what)
      : Error(what), gamma_(std::move(gamma)) {}
  const std::vector<int>& gamma() const noexcept { return gamma_; }

 private:
  std::vector<int> gamma_;
};

/// Gram-Schmidt hit a (numerically) dependent monomial.
class DegenerateBasis : public Error {
 public:
  DegenerateBasis(std::size_t index, const std::string& what) : Error(what), index_(index) {}
  /// Zero-based position of the offending basis function.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// The adaptive quadrature search gave up without meeting the tolerance.
class QuadratureFailure : public Error {
 public:
  QuadratureFailure(double residual, const std::string& what) : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// An external model (file or subprocess) produced unusable output.
class ModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace corrsc
