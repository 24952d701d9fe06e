#pragma once

#include <concepts>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "mpmm/big_float.hpp"
#include "mpmm/double_double.hpp"
#include "mpmm/error.hpp"
#include "mpmm/precision.hpp"
#include "mpmm/quad_double.hpp"

namespace mpmm {

// Element types the kernels are instantiated for.
template <class T>
concept ExtendedFloat = std::same_as<T, DoubleDouble> || std::same_as<T, QuadDouble> ||
                        std::same_as<T, BigFloat>;

template <ExtendedFloat T>
T zero_of(const PrecisionSpec& prec) {
  if constexpr (std::same_as<T, BigFloat>) {
    return BigFloat(prec.bits);
  } else {
    return T{};
  }
}

inline PrecisionSpec precision_of(const DoubleDouble&) { return PrecisionSpec::dd(); }
inline PrecisionSpec precision_of(const QuadDouble&) { return PrecisionSpec::qd(); }
inline PrecisionSpec precision_of(const BigFloat& x) { return x.precision(); }

template <ExtendedFloat T>
bool kind_matches(const PrecisionSpec& prec) {
  if constexpr (std::same_as<T, DoubleDouble>) return prec.kind == PrecisionKind::DD;
  if constexpr (std::same_as<T, QuadDouble>) return prec.kind == PrecisionKind::QD;
  if constexpr (std::same_as<T, BigFloat>) return prec.kind == PrecisionKind::AP;
}

// Conversions through the big-float backend. `round_from` extracts leading
// double components by successive round-to-nearest.
DoubleDouble dd_from_big(const BigFloat& x);
QuadDouble qd_from_big(const BigFloat& x);
BigFloat to_big(const DoubleDouble& x, unsigned bits);
BigFloat to_big(const QuadDouble& x, unsigned bits);
BigFloat to_big(const BigFloat& x, unsigned bits);

template <ExtendedFloat T>
T round_from(const BigFloat& x, const PrecisionSpec& prec) {
  if constexpr (std::same_as<T, DoubleDouble>) {
    return dd_from_big(x);
  } else if constexpr (std::same_as<T, QuadDouble>) {
    return qd_from_big(x);
  } else {
    return to_big(x, prec.bits);
  }
}

// Bits the backend needs to carry before rounding into `prec`.
unsigned conversion_bits(const PrecisionSpec& prec);

inline void set_zero(DoubleDouble& x) { x = DoubleDouble(); }
inline void set_zero(QuadDouble& x) { x = QuadDouble(); }
inline void set_zero(BigFloat& x) { mpfr_set_zero(x.get(), 1); }

// out = a + b / out = a - b, reusing out's storage.
inline void assign_add(DoubleDouble& out, const DoubleDouble& a, const DoubleDouble& b) { out = a + b; }
inline void assign_sub(DoubleDouble& out, const DoubleDouble& a, const DoubleDouble& b) { out = a - b; }
inline void assign_add(QuadDouble& out, const QuadDouble& a, const QuadDouble& b) { out = a + b; }
inline void assign_sub(QuadDouble& out, const QuadDouble& a, const QuadDouble& b) { out = a - b; }
inline void assign_add(BigFloat& out, const BigFloat& a, const BigFloat& b) {
  mpfr_add(out.get(), a.get(), b.get(), MPFR_RNDN);
}
inline void assign_sub(BigFloat& out, const BigFloat& a, const BigFloat& b) {
  mpfr_sub(out.get(), a.get(), b.get(), MPFR_RNDN);
}

// acc = acc + a * b with the product rounded to working precision first.
// One instance per thread: the big-float specialization owns scratch.
template <ExtendedFloat T>
class MulAdd {
 public:
  explicit MulAdd(const PrecisionSpec&) {}
  void operator()(T& acc, const T& a, const T& b) const { acc = acc + a * b; }
};

template <>
class MulAdd<BigFloat> {
 public:
  explicit MulAdd(const PrecisionSpec& prec) : scratch_(prec.bits) {}
  void operator()(BigFloat& acc, const BigFloat& a, const BigFloat& b) {
    mpfr_mul(scratch_.get(), a.get(), b.get(), MPFR_RNDN);
    mpfr_add(acc.get(), acc.get(), scratch_.get(), MPFR_RNDN);
  }

 private:
  BigFloat scratch_;
};

// Runtime-typed scalar in any supported precision.
using ExtendedScalar = std::variant<DoubleDouble, QuadDouble, BigFloat>;

PrecisionSpec precision_of(const ExtendedScalar& x);

// Decimal (or hex-float) literal rounded into `prec` through the big-float
// backend.
ExtendedScalar make_scalar(std::string_view literal, const PrecisionSpec& prec);
ExtendedScalar make_scalar(double value, const PrecisionSpec& prec);

// Range-checked arithmetic. Operands of different precision are a
// UsageError; a non-finite result is a RangeError.
ExtendedScalar scalar_add(const ExtendedScalar& x, const ExtendedScalar& y);
ExtendedScalar scalar_sub(const ExtendedScalar& x, const ExtendedScalar& y);
ExtendedScalar scalar_mul(const ExtendedScalar& x, const ExtendedScalar& y);
ExtendedScalar scalar_div(const ExtendedScalar& x, const ExtendedScalar& y);
ExtendedScalar scalar_sqrt(const ExtendedScalar& x);

BigFloat to_big(const ExtendedScalar& x, unsigned bits);
double to_double(const ExtendedScalar& x);
std::string to_hex(const ExtendedScalar& x);

// Calls f(std::type_identity<T>{}) with T the element type for `prec`.
template <class F>
decltype(auto) with_scalar_type(const PrecisionSpec& prec, F&& f) {
  switch (prec.kind) {
    case PrecisionKind::DD: return f(std::type_identity<DoubleDouble>{});
    case PrecisionKind::QD: return f(std::type_identity<QuadDouble>{});
    case PrecisionKind::AP: return f(std::type_identity<BigFloat>{});
  }
  throw UsageError("unknown precision kind");
}

}  // namespace mpmm
