#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace limitlaw {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Sequence or table too short for the requested operation.
class LengthError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A log-space quantity left the representable double range after
/// exponentiation. Carries the moment order that failed.
class OverflowError : public std::overflow_error {
 public:
  OverflowError(const std::string& what, std::size_t order)
      : std::overflow_error(what), order_(order) {}
  std::size_t order() const noexcept { return order_; }

 private:
  std::size_t order_;
};

/// Numerical procedure refused to produce a result it cannot certify
/// (contour truncation too coarse, grid tail too heavy).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file or kernel table.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace limitlaw
