#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace yates {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

/// A two-factor layout has a cell with no observations.
class EmptyCellError : public Error {
 public:
  EmptyCellError(std::size_t i, std::size_t j, std::string a_label, std::string b_label)
      : Error("empty cell (" + a_label + ", " + b_label + ")"),
        i_(i), j_(j), a_label_(std::move(a_label)), b_label_(std::move(b_label)) {}

  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }
  const std::string& a_label() const noexcept { return a_label_; }
  const std::string& b_label() const noexcept { return b_label_; }

 private:
  std::size_t i_;
  std::size_t j_;
  std::string a_label_;
  std::string b_label_;
};

/// sp(G) is not contained in sp(X').
class NotEstimable : public Error {
 public:
  using Error::Error;
};

/// G is the zero matrix: the hypothesis has no degrees of freedom.
class ZeroHypothesis : public Error {
 public:
  using Error::Error;
};

/// A'A is not positive definite, so the columns of A are dependent.
class SingularD : public Error {
 public:
  using Error::Error;
};

/// The full model is saturated; no error degrees of freedom remain.
class NoErrorDf : public Error {
 public:
  using Error::Error;
};

class NoHypothesisDf : public Error {
 public:
  using Error::Error;
};

}  // namespace yates
