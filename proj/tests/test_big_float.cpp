#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "mpmm/big_float.hpp"
#include "mpmm/error.hpp"

using namespace mpmm;
namespace bmp = boost::multiprecision;

namespace {

// Exact (mantissa, exponent) of a finite value, mantissa odd or zero, so
// two numbers are equal iff their keys are.
struct Key {
  bmp::cpp_int mant;
  long exp = 0;
  friend bool operator==(const Key&, const Key&) = default;
};

Key normalize(bmp::cpp_int m, long e) {
  if (m == 0) return {0, 0};
  while ((m & 1) == 0) {
    m >>= 1;
    ++e;
  }
  return {m, e};
}

Key key_of(const BigFloat& x) {
  mpz_t z;
  mpz_init(z);
  long e = mpfr_get_z_2exp(z, x.get());
  char* s = mpz_get_str(nullptr, 10, z);
  bmp::cpp_int m(s);
  void (*freefunc)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(s, std::strlen(s) + 1);
  mpz_clear(z);
  return normalize(m, e);
}

template <unsigned Bits>
using Boost = bmp::number<bmp::cpp_bin_float<Bits, bmp::digit_base_2>, bmp::et_off>;

template <unsigned Bits>
Key key_of(const Boost<Bits>& x) {
  int e = 0;
  Boost<Bits> m = bmp::frexp(x, &e);
  m = bmp::ldexp(m, static_cast<int>(Bits));
  return normalize(m.template convert_to<bmp::cpp_int>(), static_cast<long>(e) - static_cast<long>(Bits));
}

// Random value with `Bits` significant bits, built identically on both
// sides from an integer mantissa and a power of two.
template <unsigned Bits>
std::pair<BigFloat, Boost<Bits>> random_pair(std::mt19937_64& rng) {
  bmp::cpp_int m = 1;
  for (unsigned i = 1; i < Bits; ++i) m = (m << 1) | (rng() & 1);
  int e = static_cast<int>(rng() % 200) - 100 - static_cast<int>(Bits);
  bool neg = rng() & 1;
  Boost<Bits> b = bmp::ldexp(Boost<Bits>(m), e);
  BigFloat f(Bits);
  mpfr_set_str(f.get(), m.str().c_str(), 10, MPFR_RNDN);
  mpfr_mul_2si(f.get(), f.get(), e, MPFR_RNDN);
  if (neg) {
    b = -b;
    f = -f;
  }
  return {std::move(f), b};
}

// Boost's cpp_bin_float can misround a sum whose operands are about
// Bits apart in exponent. The generated operands span fewer than
// Bits + 400 bits, so the sum is exact at that width and one conversion
// rounds it.
template <unsigned Bits>
Boost<Bits> exact_then_round(const Boost<Bits>& a, const Boost<Bits>& b, bool subtract) {
  using Wide = Boost<Bits + 400>;
  Wide w = subtract ? Wide(a) - Wide(b) : Wide(a) + Wide(b);
  return static_cast<Boost<Bits>>(w);
}

template <unsigned Bits>
void check_against_boost(unsigned seed) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 3000; ++i) {
    auto [fa, ba] = random_pair<Bits>(rng);
    auto [fb, bb] = random_pair<Bits>(rng);
    ASSERT_EQ(key_of(fa), key_of<Bits>(ba));
    ASSERT_EQ(key_of(fa + fb), key_of<Bits>(exact_then_round(ba, bb, false))) << "add " << i;
    ASSERT_EQ(key_of(fa - fb), key_of<Bits>(exact_then_round(ba, bb, true))) << "sub " << i;
    ASSERT_EQ(key_of(fa * fb), key_of<Bits>(ba * bb)) << "mul " << i;
    ASSERT_EQ(key_of(fa / fb), key_of<Bits>(ba / bb)) << "div " << i;
    ASSERT_EQ(key_of(sqrt(abs(fa))), key_of<Bits>(bmp::sqrt(bmp::abs(ba)))) << "sqrt " << i;
  }
}

}  // namespace

TEST(BigFloat, MatchesIndependentOracleAt128Bits) { check_against_boost<128>(1); }
TEST(BigFloat, MatchesIndependentOracleAt256Bits) { check_against_boost<256>(2); }
TEST(BigFloat, MatchesIndependentOracleAt1024Bits) { check_against_boost<1024>(3); }

TEST(BigFloat, PrecisionMismatchIsUsageError) {
  BigFloat a(1.0, 128), b(1.0, 256);
  EXPECT_THROW(a + b, UsageError);
  EXPECT_THROW(a * b, UsageError);
  EXPECT_THROW(a -= b, UsageError);
}

TEST(BigFloat, CopiesAreDeepAndMovesKeepValue) {
  BigFloat a(3.0, 200);
  BigFloat b = a;
  b += BigFloat(1.0, 200);
  EXPECT_EQ(a.to_double(), 3.0);
  EXPECT_EQ(b.to_double(), 4.0);

  BigFloat c = std::move(b);
  EXPECT_EQ(c.to_double(), 4.0);
  EXPECT_EQ(c.bits(), 200u);

  BigFloat d(64);
  d = a;  // assignment adopts the source precision
  EXPECT_EQ(d.bits(), 200u);
  EXPECT_TRUE(identical(d, a));
}

TEST(BigFloat, ParseAndHexRoundTrip) {
  BigFloat x = BigFloat::parse("0.1", 300);
  BigFloat y = big_from_hex(to_hex(x), 300);
  EXPECT_TRUE(identical(x, y));
  // Parsed in 300 bits, not through a double.
  EXPECT_FALSE((x - BigFloat(0.1, 300)).is_zero());
  EXPECT_THROW(BigFloat::parse("not-a-number", 128), FormatError);
}
