#include "mpmm/precision.hpp"

#include <charconv>
#include <cmath>

#include "mpmm/error.hpp"

namespace mpmm {

namespace {

unsigned parse_bits(std::string_view digits, std::string_view whole) {
  unsigned bits = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), bits);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
    throw UsageError("bad precision bits in '" + std::string(whole) + "'");
  }
  return bits;
}

}  // namespace

PrecisionSpec PrecisionSpec::ap(unsigned bits) {
  if (bits < kMinApBits || bits > kMaxApBits) {
    throw UsageError("AP precision must be in [24, 2^20] bits, got " + std::to_string(bits));
  }
  return {PrecisionKind::AP, bits};
}

double PrecisionSpec::unit_roundoff() const { return std::ldexp(1.0, -static_cast<int>(bits)); }

std::strong_ordering operator<=>(const PrecisionSpec& a, const PrecisionSpec& b) {
  if (auto c = static_cast<int>(a.kind) <=> static_cast<int>(b.kind); c != 0) return c;
  return a.bits <=> b.bits;
}

std::string to_string(const PrecisionSpec& prec) {
  switch (prec.kind) {
    case PrecisionKind::DD: return "dd";
    case PrecisionKind::QD: return "qd";
    case PrecisionKind::AP: return "ap:" + std::to_string(prec.bits);
  }
  return "?";
}

PrecisionSpec parse_precision(std::string_view text) {
  if (text == "dd") return PrecisionSpec::dd();
  if (text == "qd") return PrecisionSpec::qd();
  if (text.starts_with("ap:")) return PrecisionSpec::ap(parse_bits(text.substr(3), text));
  throw UsageError("unknown precision '" + std::string(text) + "' (expected dd, qd or ap:<bits>)");
}

std::string to_table_token(const PrecisionSpec& prec) {
  switch (prec.kind) {
    case PrecisionKind::DD: return "dd," + std::to_string(prec.bits);
    case PrecisionKind::QD: return "qd," + std::to_string(prec.bits);
    case PrecisionKind::AP: return "ap," + std::to_string(prec.bits);
  }
  return "?";
}

PrecisionSpec parse_table_token(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw FormatError("precision field '" + std::string(text) + "' lacks ',bits'");
  }
  auto kind = text.substr(0, comma);
  unsigned bits = 0;
  try {
    bits = parse_bits(text.substr(comma + 1), text);
  } catch (const UsageError& e) {
    throw FormatError(e.what());
  }
  if (kind == "dd" && bits == PrecisionSpec::kDoubleDoubleBits) return PrecisionSpec::dd();
  if (kind == "qd" && bits == PrecisionSpec::kQuadDoubleBits) return PrecisionSpec::qd();
  if (kind == "ap") {
    try {
      return PrecisionSpec::ap(bits);
    } catch (const UsageError& e) {
      throw FormatError(e.what());
    }
  }
  throw FormatError("bad precision field '" + std::string(text) + "'");
}

}  // namespace mpmm
