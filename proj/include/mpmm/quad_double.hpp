#pragma once

#include <array>
#include <string>
#include <string_view>

#include "mpmm/double_double.hpp"
#include "mpmm/precision.hpp"

namespace mpmm {

// Unevaluated sum of four doubles, components non-overlapping and in
// descending magnitude. Addition uses the accurate merge-and-accumulate
// scheme; multiplication keeps all O(eps^3) terms before renormalizing.
struct QuadDouble {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  constexpr QuadDouble() = default;
  constexpr explicit QuadDouble(double x) : c{x, 0.0, 0.0, 0.0} {}
  constexpr QuadDouble(double c0, double c1, double c2, double c3) : c{c0, c1, c2, c3} {}
  explicit QuadDouble(const DoubleDouble& d) : c{d.hi, d.lo, 0.0, 0.0} {}

  static PrecisionSpec precision() { return PrecisionSpec::qd(); }

  double operator[](std::size_t i) const { return c[i]; }
  double to_double() const { return c[0] + c[1] + c[2] + c[3]; }
  bool is_finite() const;
  // Each component is at most half an ulp of its predecessor.
  bool is_normalized() const;

  QuadDouble operator-() const { return {-c[0], -c[1], -c[2], -c[3]}; }
  QuadDouble& operator+=(const QuadDouble& b);
  QuadDouble& operator-=(const QuadDouble& b);
  QuadDouble& operator*=(const QuadDouble& b);
  QuadDouble& operator/=(const QuadDouble& b);
};

QuadDouble operator+(const QuadDouble& a, const QuadDouble& b);
QuadDouble operator-(const QuadDouble& a, const QuadDouble& b);
QuadDouble operator*(const QuadDouble& a, const QuadDouble& b);
QuadDouble operator/(const QuadDouble& a, const QuadDouble& b);
QuadDouble sqrt(const QuadDouble& a);
QuadDouble abs(const QuadDouble& a);

inline QuadDouble& QuadDouble::operator+=(const QuadDouble& b) { return *this = *this + b; }
inline QuadDouble& QuadDouble::operator-=(const QuadDouble& b) { return *this = *this - b; }
inline QuadDouble& QuadDouble::operator*=(const QuadDouble& b) { return *this = *this * b; }
inline QuadDouble& QuadDouble::operator/=(const QuadDouble& b) { return *this = *this / b; }

bool identical(const QuadDouble& a, const QuadDouble& b);

std::string to_hex(const QuadDouble& x);
QuadDouble qd_from_hex(std::string_view text);

}  // namespace mpmm
