#include "mpmm/scalar.hpp"

#include <array>
#include <cmath>

namespace mpmm {

namespace {

// Successive extraction: c_k = RN(x - c_0 - ... - c_{k-1}). The remainders
// are exact at x's precision.
template <std::size_t N>
std::array<double, N> extract_components(const BigFloat& x) {
  std::array<double, N> out{};
  BigFloat rest(x);
  for (std::size_t k = 0; k < N; ++k) {
    out[k] = mpfr_get_d(rest.get(), MPFR_RNDN);
    if (!std::isfinite(out[k])) throw RangeError("value outside double exponent range");
    mpfr_sub_d(rest.get(), rest.get(), out[k], MPFR_RNDN);
  }
  return out;
}

template <class T>
const T& same_kind(const ExtendedScalar& y) {
  if (const T* p = std::get_if<T>(&y)) return *p;
  throw UsageError("precision mismatch between scalar operands");
}

bool finite(const ExtendedScalar& x) {
  return std::visit([](const auto& v) { return v.is_finite(); }, x);
}

ExtendedScalar checked(ExtendedScalar r, const char* op) {
  if (!finite(r)) throw RangeError(std::string(op) + ": result not finite");
  return r;
}

template <class Op>
ExtendedScalar binary(const ExtendedScalar& x, const ExtendedScalar& y, Op op, const char* name) {
  return checked(std::visit(
                     [&](const auto& a) -> ExtendedScalar {
                       using T = std::decay_t<decltype(a)>;
                       return op(a, same_kind<T>(y));
                     },
                     x),
                 name);
}

}  // namespace

DoubleDouble dd_from_big(const BigFloat& x) {
  auto c = extract_components<2>(x);
  return {c[0], c[1]};
}

QuadDouble qd_from_big(const BigFloat& x) {
  auto c = extract_components<4>(x);
  return {c[0], c[1], c[2], c[3]};
}

BigFloat to_big(const DoubleDouble& x, unsigned bits) {
  BigFloat out(x.hi, bits);
  mpfr_add_d(out.get(), out.get(), x.lo, MPFR_RNDN);
  return out;
}

BigFloat to_big(const QuadDouble& x, unsigned bits) {
  // mpfr_sum rounds the exact sum once.
  std::array<BigFloat, 4> parts{BigFloat(x[0], 53), BigFloat(x[1], 53), BigFloat(x[2], 53),
                                BigFloat(x[3], 53)};
  std::array<mpfr_ptr, 4> ptrs{parts[0].get(), parts[1].get(), parts[2].get(), parts[3].get()};
  BigFloat out(bits);
  mpfr_sum(out.get(), ptrs.data(), 4, MPFR_RNDN);
  return out;
}

BigFloat to_big(const BigFloat& x, unsigned bits) {
  BigFloat out(bits);
  mpfr_set(out.get(), x.get(), MPFR_RNDN);
  return out;
}

unsigned conversion_bits(const PrecisionSpec& prec) {
  switch (prec.kind) {
    case PrecisionKind::DD: return 2 * PrecisionSpec::kDoubleDoubleBits + 64;
    case PrecisionKind::QD: return 2 * PrecisionSpec::kQuadDoubleBits + 64;
    case PrecisionKind::AP: return prec.bits;
  }
  return prec.bits;
}

PrecisionSpec precision_of(const ExtendedScalar& x) {
  return std::visit([](const auto& v) { return precision_of(v); }, x);
}

ExtendedScalar make_scalar(std::string_view literal, const PrecisionSpec& prec) {
  BigFloat wide = BigFloat::parse(literal, conversion_bits(prec));
  return with_scalar_type(prec, [&]<class T>(std::type_identity<T>) -> ExtendedScalar {
    return round_from<T>(wide, prec);
  });
}

ExtendedScalar make_scalar(double value, const PrecisionSpec& prec) {
  if (!std::isfinite(value)) throw RangeError("make_scalar: non-finite value");
  return with_scalar_type(prec, [&]<class T>(std::type_identity<T>) -> ExtendedScalar {
    if constexpr (std::same_as<T, BigFloat>) {
      return BigFloat(value, prec.bits);
    } else {
      return T(value);
    }
  });
}

ExtendedScalar scalar_add(const ExtendedScalar& x, const ExtendedScalar& y) {
  return binary(x, y, [](const auto& a, const auto& b) { return a + b; }, "scalar_add");
}

ExtendedScalar scalar_sub(const ExtendedScalar& x, const ExtendedScalar& y) {
  return binary(x, y, [](const auto& a, const auto& b) { return a - b; }, "scalar_sub");
}

ExtendedScalar scalar_mul(const ExtendedScalar& x, const ExtendedScalar& y) {
  return binary(x, y, [](const auto& a, const auto& b) { return a * b; }, "scalar_mul");
}

ExtendedScalar scalar_div(const ExtendedScalar& x, const ExtendedScalar& y) {
  return binary(x, y, [](const auto& a, const auto& b) { return a / b; }, "scalar_div");
}

ExtendedScalar scalar_sqrt(const ExtendedScalar& x) {
  return checked(std::visit([](const auto& a) -> ExtendedScalar { return sqrt(a); }, x), "scalar_sqrt");
}

BigFloat to_big(const ExtendedScalar& x, unsigned bits) {
  return std::visit([&](const auto& v) { return to_big(v, bits); }, x);
}

double to_double(const ExtendedScalar& x) {
  return std::visit([](const auto& v) { return v.to_double(); }, x);
}

std::string to_hex(const ExtendedScalar& x) {
  return std::visit([](const auto& v) { return to_hex(v); }, x);
}

}  // namespace mpmm
