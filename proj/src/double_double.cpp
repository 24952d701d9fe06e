#include "mpmm/double_double.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>

#include "hex_util.hpp"
#include "mpmm/error.hpp"

namespace mpmm {

SumAndError two_sum(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw RangeError("two_sum: non-finite operand");
  double e;
  double s = eft::two_sum(a, b, e);
  if (!std::isfinite(s)) throw RangeError("two_sum: overflow");
  return {s, e};
}

SumAndError two_prod(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw RangeError("two_prod: non-finite operand");
  double e;
  double p = eft::two_prod(a, b, e);
  if (!std::isfinite(p)) throw RangeError("two_prod: overflow");
  if (a != 0.0 && b != 0.0 && std::fabs(p) < eft::kTwoProdExactLimit) {
    throw RangeError("two_prod: product too small for an exact error term");
  }
  return {p, e};
}

bool DoubleDouble::is_finite() const { return std::isfinite(hi) && std::isfinite(lo); }

DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
  double q1 = a.hi / b.hi;
  DoubleDouble r = a - DoubleDouble(q1) * b;
  double q2 = r.hi / b.hi;
  r -= DoubleDouble(q2) * b;
  double q3 = r.hi / b.hi;
  double e;
  q1 = eft::quick_two_sum(q1, q2, e);
  return DoubleDouble(q1, e) + DoubleDouble(q3);
}

DoubleDouble sqrt(const DoubleDouble& a) {
  if (a.hi == 0.0) return {};
  if (a.hi < 0.0) return {std::nan(""), std::nan("")};
  // One Newton step on 1/sqrt from a double seed doubles the accurate bits.
  double x = 1.0 / std::sqrt(a.hi);
  double ax = a.hi * x;
  DoubleDouble ax2 = DoubleDouble(ax) * DoubleDouble(ax);
  double correction = (a - ax2).hi * (x * 0.5);
  return DoubleDouble::from_sum(ax, correction);
}

DoubleDouble abs(const DoubleDouble& a) { return a.hi < 0.0 ? -a : a; }

bool identical(const DoubleDouble& a, const DoubleDouble& b) {
  return std::bit_cast<std::uint64_t>(a.hi) == std::bit_cast<std::uint64_t>(b.hi) &&
         std::bit_cast<std::uint64_t>(a.lo) == std::bit_cast<std::uint64_t>(b.lo);
}

std::string to_hex(const DoubleDouble& x) {
  return detail::hex_double(x.hi) + "," + detail::hex_double(x.lo);
}

DoubleDouble dd_from_hex(std::string_view text) {
  auto parts = detail::split_hex_components(text, 2);
  return {parts[0], parts[1]};
}

}  // namespace mpmm
