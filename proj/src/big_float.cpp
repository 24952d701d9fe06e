#include "mpmm/big_float.hpp"

#include <cstdlib>
#include <string>

#include "mpmm/error.hpp"

namespace mpmm {

namespace {

void require_same_precision(const BigFloat& a, const BigFloat& b) {
  if (a.bits() != b.bits()) {
    throw UsageError("precision mismatch: " + std::to_string(a.bits()) + " vs " +
                     std::to_string(b.bits()) + " bits");
  }
}

}  // namespace

BigFloat::BigFloat(unsigned bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double value, unsigned bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat BigFloat::parse(std::string_view text, unsigned bits) {
  BigFloat out(bits);
  std::string s(text);
  char* end = nullptr;
  mpfr_strtofr(out.value_, s.c_str(), &end, 0, MPFR_RNDN);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw FormatError("bad big-float literal '" + s + "'");
  }
  return out;
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    if (mpfr_get_prec(value_) != mpfr_get_prec(other.value_)) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    }
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::operator-() const {
  BigFloat out(bits());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

BigFloat& BigFloat::operator+=(const BigFloat& b) {
  require_same_precision(*this, b);
  mpfr_add(value_, value_, b.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& b) {
  require_same_precision(*this, b);
  mpfr_sub(value_, value_, b.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& b) {
  require_same_precision(*this, b);
  mpfr_mul(value_, value_, b.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& b) {
  require_same_precision(*this, b);
  mpfr_div(value_, value_, b.value_, MPFR_RNDN);
  return *this;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat out(a);
  return out += b;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat out(a);
  return out -= b;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat out(a);
  return out *= b;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat out(a);
  return out /= b;
}

BigFloat sqrt(const BigFloat& a) {
  BigFloat out(a.bits());
  mpfr_sqrt(out.get(), a.get(), MPFR_RNDN);
  return out;
}

BigFloat abs(const BigFloat& a) {
  BigFloat out(a.bits());
  mpfr_abs(out.get(), a.get(), MPFR_RNDN);
  return out;
}

bool identical(const BigFloat& a, const BigFloat& b) {
  if (a.bits() != b.bits()) return false;
  if (mpfr_nan_p(a.get()) || mpfr_nan_p(b.get())) return mpfr_nan_p(a.get()) && mpfr_nan_p(b.get());
  return mpfr_equal_p(a.get(), b.get()) && mpfr_signbit(a.get()) == mpfr_signbit(b.get());
}

std::string to_hex(const BigFloat& x) {
  char* raw = nullptr;
  if (mpfr_asprintf(&raw, "%Ra", x.get()) < 0) throw std::bad_alloc();
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

BigFloat big_from_hex(std::string_view text, unsigned bits) { return BigFloat::parse(text, bits); }

}  // namespace mpmm
