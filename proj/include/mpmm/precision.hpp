#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace mpmm {

enum class PrecisionKind { DD, QD, AP };

// Working precision of a scalar or matrix. DD and QD have fixed mantissa
// widths (106 and 212 bits); AP carries a configurable width.
struct PrecisionSpec {
  PrecisionKind kind = PrecisionKind::DD;
  unsigned bits = 106;

  static constexpr unsigned kDoubleDoubleBits = 106;
  static constexpr unsigned kQuadDoubleBits = 212;
  static constexpr unsigned kMinApBits = 24;
  static constexpr unsigned kMaxApBits = 1u << 20;

  static PrecisionSpec dd() { return {PrecisionKind::DD, kDoubleDoubleBits}; }
  static PrecisionSpec qd() { return {PrecisionKind::QD, kQuadDoubleBits}; }
  // Throws UsageError when bits is outside [24, 2^20].
  static PrecisionSpec ap(unsigned bits);

  // Unit roundoff, 2^-bits.
  double unit_roundoff() const;

  friend bool operator==(const PrecisionSpec&, const PrecisionSpec&) = default;
  // DD < QD < AP, AP ordered by bits.
  friend std::strong_ordering operator<=>(const PrecisionSpec& a, const PrecisionSpec& b);
};

// "dd", "qd", "ap:128"
std::string to_string(const PrecisionSpec& prec);
PrecisionSpec parse_precision(std::string_view text);

// "dd,106", "qd,212", "ap,128" (tuning table field)
std::string to_table_token(const PrecisionSpec& prec);
PrecisionSpec parse_table_token(std::string_view text);

}  // namespace mpmm
