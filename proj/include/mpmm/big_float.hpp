#pragma once

#include <mpfr.h>

#include <string>
#include <string_view>

#include "mpmm/precision.hpp"

namespace mpmm {

// Owning handle to an MPFR number with a fixed mantissa width. Every value
// owns its limbs; copies are deep. Arithmetic is correctly rounded to
// nearest at the operands' precision, and mixing precisions is a
// UsageError.
class BigFloat {
 public:
  explicit BigFloat(unsigned bits = 128);
  BigFloat(double value, unsigned bits);
  // Decimal or C99 hex-float literal, correctly rounded to `bits`.
  static BigFloat parse(std::string_view text, unsigned bits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  unsigned bits() const { return static_cast<unsigned>(mpfr_get_prec(value_)); }
  PrecisionSpec precision() const { return PrecisionSpec::ap(bits()); }

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }

  BigFloat operator-() const;
  BigFloat& operator+=(const BigFloat& b);
  BigFloat& operator-=(const BigFloat& b);
  BigFloat& operator*=(const BigFloat& b);
  BigFloat& operator/=(const BigFloat& b);

 private:
  mpfr_t value_;
};

BigFloat operator+(const BigFloat& a, const BigFloat& b);
BigFloat operator-(const BigFloat& a, const BigFloat& b);
BigFloat operator*(const BigFloat& a, const BigFloat& b);
BigFloat operator/(const BigFloat& a, const BigFloat& b);
BigFloat sqrt(const BigFloat& a);
BigFloat abs(const BigFloat& a);

// Same precision, same value, same sign of zero.
bool identical(const BigFloat& a, const BigFloat& b);

// Exact hex rendering ("0x1.1e3779b97f4a7c15f39cc0605cedc834p+1").
std::string to_hex(const BigFloat& x);
BigFloat big_from_hex(std::string_view text, unsigned bits);

}  // namespace mpmm
