#include <gtest/gtest.h>

#include <limits>

#include "mpmm/eft.hpp"
#include "mpmm/error.hpp"
#include "oracle.hpp"

using namespace mpmm;
using oracle::Mp;

namespace {

bool sum_exact(double a, double b, const SumAndError& r) {
  Mp want, got, t;
  mpfr_set_d(want.v, a, MPFR_RNDN);
  mpfr_set_d(t.v, b, MPFR_RNDN);
  mpfr_add(want.v, want.v, t.v, MPFR_RNDN);
  mpfr_set_d(got.v, r.value, MPFR_RNDN);
  mpfr_set_d(t.v, r.error, MPFR_RNDN);
  mpfr_add(got.v, got.v, t.v, MPFR_RNDN);
  return mpfr_equal_p(want.v, got.v) && r.value == a + b;
}

bool prod_exact(double a, double b, const SumAndError& r) {
  Mp want, got, t;
  mpfr_set_d(want.v, a, MPFR_RNDN);
  mpfr_mul_d(want.v, want.v, b, MPFR_RNDN);
  mpfr_set_d(got.v, r.value, MPFR_RNDN);
  mpfr_set_d(t.v, r.error, MPFR_RNDN);
  mpfr_add(got.v, got.v, t.v, MPFR_RNDN);
  return mpfr_equal_p(want.v, got.v) && r.value == a * b;
}

}  // namespace

TEST(TwoSum, RandomPairsAcrossExponentsAreExact) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200000; ++i) {
    // Wide gaps exercise the case where b vanishes entirely into e.
    const int span = (i % 3 == 0) ? 1000 : 40;
    double a = oracle::random_double(rng, -span, span);
    double b = oracle::random_double(rng, -span, span);
    ASSERT_TRUE(sum_exact(a, b, two_sum(a, b))) << std::hexfloat << a << " " << b;
  }
}

TEST(TwoSum, SignedZerosAndCancellation) {
  EXPECT_EQ(two_sum(1.0, -1.0), (SumAndError{0.0, 0.0}));
  auto r = two_sum(1.0, 0x1p-60);
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(r.error, 0x1p-60);
  EXPECT_TRUE(sum_exact(0x1p1023, -0x1p970, two_sum(0x1p1023, -0x1p970)));
  EXPECT_TRUE(sum_exact(std::numeric_limits<double>::denorm_min(), 1.0,
                        two_sum(std::numeric_limits<double>::denorm_min(), 1.0)));
}

TEST(TwoSum, RejectsNonFiniteAndOverflow) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(two_sum(inf, 1.0), RangeError);
  EXPECT_THROW(two_sum(1.0, std::nan("")), RangeError);
  EXPECT_THROW(two_sum(0x1.fffffffffffffp1023, 0x1.fffffffffffffp1023), RangeError);
}

TEST(QuickTwoSum, ExactWhenOrdered) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50000; ++i) {
    double a = oracle::random_double(rng, -30, 30);
    double b = oracle::random_double(rng, -90, -31);
    double e;
    double s = eft::quick_two_sum(a, b, e);
    ASSERT_TRUE(sum_exact(a, b, {s, e}));
  }
}

TEST(TwoProd, RandomPairsAreExact) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200000; ++i) {
    double a = oracle::random_double(rng, -400, 400);
    double b = oracle::random_double(rng, -400, 400);
    ASSERT_TRUE(prod_exact(a, b, two_prod(a, b))) << std::hexfloat << a << " " << b;
  }
}

TEST(TwoProd, ErrorTermOfSquares) {
  // (1 + 2^-52)^2 = 1 + 2^-51 + 2^-104
  auto r = two_prod(1.0 + 0x1p-52, 1.0 + 0x1p-52);
  EXPECT_EQ(r.value, 1.0 + 0x1p-51);
  EXPECT_EQ(r.error, 0x1p-104);
  EXPECT_EQ(two_prod(0.0, 5.0), (SumAndError{0.0, 0.0}));
}

TEST(TwoProd, RejectsOverflowNonFiniteAndUnderflow) {
  EXPECT_THROW(two_prod(0x1p600, 0x1p600), RangeError);
  EXPECT_THROW(two_prod(std::numeric_limits<double>::infinity(), 0.0), RangeError);
  EXPECT_THROW(two_prod(std::nan(""), 2.0), RangeError);
  // Error term would need bits below the subnormal range.
  EXPECT_THROW(two_prod(0x1.3p-500, 0x1.7p-500), RangeError);
  EXPECT_NO_THROW(two_prod(0x1.3p-480, 0x1.7p-480));
}
