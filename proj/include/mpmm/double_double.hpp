#pragma once

#include <string>
#include <string_view>

#include "mpmm/eft.hpp"
#include "mpmm/precision.hpp"

namespace mpmm {

// Unevaluated sum hi + lo of two doubles with fl(hi + lo) == hi.
//
// Arithmetic follows the usual double-word algorithms: accurate addition
// (two two_sums), multiplication with FMA for the cross terms. Relative
// error is a small multiple of 2^-106; results are not correctly rounded.
// Operators do not check for overflow; use the scalar_* functions in
// scalar.hpp for range-checked arithmetic.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr explicit DoubleDouble(double x) : hi(x), lo(0.0) {}
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  static DoubleDouble from_sum(double a, double b) {
    double e;
    double s = eft::two_sum(a, b, e);
    return {s, e};
  }

  static PrecisionSpec precision() { return PrecisionSpec::dd(); }

  double to_double() const { return hi + lo; }
  bool is_finite() const;
  bool is_normalized() const { return hi + lo == hi; }

  DoubleDouble operator-() const { return {-hi, -lo}; }
  DoubleDouble& operator+=(const DoubleDouble& b);
  DoubleDouble& operator-=(const DoubleDouble& b);
  DoubleDouble& operator*=(const DoubleDouble& b);
  DoubleDouble& operator/=(const DoubleDouble& b);
};

inline DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
  double s2;
  double t2;
  double s1 = eft::two_sum(a.hi, b.hi, s2);
  double t1 = eft::two_sum(a.lo, b.lo, t2);
  s2 += t1;
  s1 = eft::quick_two_sum(s1, s2, s2);
  s2 += t2;
  s1 = eft::quick_two_sum(s1, s2, s2);
  return {s1, s2};
}

inline DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) {
  double s2;
  double t2;
  double s1 = eft::two_diff(a.hi, b.hi, s2);
  double t1 = eft::two_diff(a.lo, b.lo, t2);
  s2 += t1;
  s1 = eft::quick_two_sum(s1, s2, s2);
  s2 += t2;
  s1 = eft::quick_two_sum(s1, s2, s2);
  return {s1, s2};
}

inline DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
  double cl1;
  double ch = eft::two_prod(a.hi, b.hi, cl1);
  double tl0 = a.lo * b.lo;
  double tl1 = std::fma(a.hi, b.lo, tl0);
  double cl2 = std::fma(a.lo, b.hi, tl1);
  double cl3 = cl1 + cl2;
  double lo;
  double hi = eft::quick_two_sum(ch, cl3, lo);
  return {hi, lo};
}

DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b);
DoubleDouble sqrt(const DoubleDouble& a);
DoubleDouble abs(const DoubleDouble& a);

inline DoubleDouble& DoubleDouble::operator+=(const DoubleDouble& b) { return *this = *this + b; }
inline DoubleDouble& DoubleDouble::operator-=(const DoubleDouble& b) { return *this = *this - b; }
inline DoubleDouble& DoubleDouble::operator*=(const DoubleDouble& b) { return *this = *this * b; }
inline DoubleDouble& DoubleDouble::operator/=(const DoubleDouble& b) { return *this = *this / b; }

// Bitwise identity of both components (distinguishes -0 from +0).
bool identical(const DoubleDouble& a, const DoubleDouble& b);

// Hex-float components joined by ',', e.g. "0x1p+0,0x1p-100".
std::string to_hex(const DoubleDouble& x);
DoubleDouble dd_from_hex(std::string_view text);

}  // namespace mpmm
