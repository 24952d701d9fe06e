#pragma once

// Error-free transformations on native doubles. The unchecked variants in
// `eft::` are used inside the DD/QD arithmetic; the checked `two_sum` and
// `two_prod` at namespace scope signal RangeError when exactness is lost.

#include <cmath>
#include <utility>

namespace mpmm {

namespace eft {

// s + e == a + b exactly, s = fl(a + b).
inline double two_sum(double a, double b, double& e) {
  double s = a + b;
  double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
  return s;
}

// Requires |a| >= |b| (or a == 0).
inline double quick_two_sum(double a, double b, double& e) {
  double s = a + b;
  e = b - (s - a);
  return s;
}

inline double two_diff(double a, double b, double& e) {
  double s = a - b;
  double bb = s - a;
  e = (a - (s - bb)) - (b + bb);
  return s;
}

// p + e == a * b exactly unless the product underflows.
inline double two_prod(double a, double b, double& e) {
  double p = a * b;
  e = std::fma(a, b, -p);
  return p;
}

// Underflow limit below which the error term of a product may be inexact:
// the error needs 53 bits below the product's exponent.
inline constexpr double kTwoProdExactLimit = 0x1p-969;

}  // namespace eft

struct SumAndError {
  double value;
  double error;
  friend bool operator==(const SumAndError&, const SumAndError&) = default;
};

// Throws RangeError on non-finite input or when a + b overflows.
SumAndError two_sum(double a, double b);

// Throws RangeError on non-finite input, overflow, or when the product
// falls below the range where its rounding error is representable.
SumAndError two_prod(double a, double b);

}  // namespace mpmm
