#pragma once

#include <stdexcept>
#include <string>

namespace bumpfn {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Two independent computations that must agree did not.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A point of the cover domain is not covered by any patch.
class CoverageError : public std::runtime_error {
 public:
  CoverageError(double x, const std::string& what)
      : std::runtime_error(what), x_(x) {}

  double uncovered_point() const noexcept { return x_; }

 private:
  double x_;
};

// Malformed textual input (JSON cover files, interval literals).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bumpfn
