#pragma once

#include <stdexcept>
#include <string>

namespace resilim {

/// Malformed or inconsistent input document (bad JSON, ragged rows,
/// dimension mismatches, non-finite entries).
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A model property required by the requested computation does not hold,
/// e.g. the defender pair (A, B_d) is not controllable.
class UncontrollableError : public std::runtime_error {
public:
  UncontrollableError(const std::string& what, int unreachable_dimension)
      : std::runtime_error(what), unreachable_dimension_(unreachable_dimension) {}

  int unreachable_dimension() const { return unreachable_dimension_; }

private:
  int unreachable_dimension_;
};

/// Numerical failure: non-finite intermediates, overflowing matrix
/// exponentials, iteration non-convergence.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Transfer target has a component in the unreachable subspace of the pair.
class UnreachableError : public NumericalError {
public:
  explicit UnreachableError(const std::string& what) : NumericalError(what) {}
};

}  // namespace resilim
