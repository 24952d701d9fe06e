#pragma once

#include <stdexcept>
#include <string>

namespace mpmm {

// Caller broke a precondition: shape or precision mismatch, bad argument.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Result left the finite range of the working precision.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// Malformed or unsupported file contents.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Clock returned a zero or negative interval.
class MeasurementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mpmm
