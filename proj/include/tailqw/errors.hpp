#pragma once

#include <stdexcept>
#include <string>

namespace tailqw {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad input: invalid vertex ids, malformed files, violated preconditions.
class ValidationError : public Error {
public:
  using Error::Error;
};

class NotEquitable : public ValidationError {
public:
  NotEquitable(const std::string& what, int vertex, int cell)
      : ValidationError(what), vertex_(vertex), cell_(cell) {}

  int vertex() const noexcept { return vertex_; }
  int cell() const noexcept { return cell_; }

private:
  int vertex_;
  int cell_;
};

// Numerical procedure failed to reach its stopping criterion.
class NumericalError : public Error {
public:
  using Error::Error;
};

class NonConvergence : public NumericalError {
public:
  NonConvergence(const std::string& what, int truncation_reached)
      : NumericalError(what), truncation_(truncation_reached) {}

  int truncation_reached() const noexcept { return truncation_; }

private:
  int truncation_;
};

class NoTransferPossible : public Error {
public:
  using Error::Error;
};

}  // namespace tailqw
