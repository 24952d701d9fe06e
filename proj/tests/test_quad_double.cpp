#include <gtest/gtest.h>

#include "mpmm/error.hpp"
#include "mpmm/quad_double.hpp"
#include "oracle.hpp"

using namespace mpmm;
using oracle::Mp;

namespace {

constexpr mpfr_prec_t kBits = 512;

template <class Op, class MpOp>
double max_rel_err(int count, unsigned seed, Op op, MpOp mp_op, int emin = -60, int emax = 60) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  Mp x(kBits), y(kBits), want(kBits), got(kBits);
  for (int i = 0; i < count; ++i) {
    auto a = oracle::random_qd(rng, emin, emax);
    auto b = oracle::random_qd(rng, emin, emax);
    oracle::set_qd(x, a);
    oracle::set_qd(y, b);
    mp_op(want.v, x.v, y.v);
    oracle::set_qd(got, op(a, b));
    worst = std::max(worst, oracle::rel_err(got, want));
  }
  return worst;
}

// Sloppy-free QD arithmetic lands a few ulps of 2^-212 from exact.
constexpr double kAddBound = 0x1p-208;
constexpr double kMulBound = 0x1p-206;
constexpr double kDivBound = 0x1p-205;

}  // namespace

TEST(QuadDouble, AddWithinBound) {
  double e = max_rel_err(
      20000, 1, [](auto a, auto b) { return a + b; },
      [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y) { mpfr_add(r, x, y, MPFR_RNDN); });
  EXPECT_LE(e, kAddBound);
}

TEST(QuadDouble, SubWithinBoundUnderCancellation) {
  double e = max_rel_err(
      20000, 2, [](auto a, auto b) { return a - b; },
      [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y) { mpfr_sub(r, x, y, MPFR_RNDN); }, 0, 1);
  EXPECT_LE(e, kAddBound);
}

TEST(QuadDouble, MulWithinBound) {
  double e = max_rel_err(
      20000, 3, [](auto a, auto b) { return a * b; },
      [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y) { mpfr_mul(r, x, y, MPFR_RNDN); });
  EXPECT_LE(e, kMulBound);
}

TEST(QuadDouble, DivWithinBound) {
  double e = max_rel_err(
      20000, 4, [](auto a, auto b) { return a / b; },
      [](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y) { mpfr_div(r, x, y, MPFR_RNDN); });
  EXPECT_LE(e, kDivBound);
}

TEST(QuadDouble, SqrtWithinBound) {
  std::mt19937_64 rng(5);
  Mp x(kBits), want(kBits), got(kBits);
  double worst = 0.0;
  for (int i = 0; i < 20000; ++i) {
    auto a = abs(oracle::random_qd(rng, -200, 200));
    oracle::set_qd(x, a);
    mpfr_sqrt(want.v, x.v, MPFR_RNDN);
    oracle::set_qd(got, sqrt(a));
    worst = std::max(worst, oracle::rel_err(got, want));
  }
  EXPECT_LE(worst, kDivBound);
}

TEST(QuadDouble, ResultsStayNormalized) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 20000; ++i) {
    auto a = oracle::random_qd(rng, -20, 20);
    auto b = oracle::random_qd(rng, -20, 20);
    for (auto r : {a + b, a - b, a * b, a / b}) ASSERT_TRUE(r.is_normalized());
  }
}

TEST(QuadDouble, AlgebraicProperties) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    auto a = oracle::random_qd(rng, -20, 20);
    auto b = oracle::random_qd(rng, -20, 20);
    ASSERT_TRUE(identical(a + b, b + a));
    ASSERT_EQ((a - a)[0], 0.0);
    ASSERT_TRUE(identical(a * QuadDouble(1.0), a));
    ASSERT_TRUE(identical(-(-a), a));
  }
}

TEST(QuadDouble, CarriesBitsBeyondDoubleDouble) {
  // 1 + 2^-150 is invisible to DD but not to QD.
  QuadDouble x = QuadDouble(1.0) + QuadDouble(0x1p-150);
  EXPECT_EQ((x - QuadDouble(1.0))[0], 0x1p-150);
}

TEST(QuadDouble, HexRoundTrip) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 1000; ++i) {
    auto a = oracle::random_qd(rng, -500, 500);
    ASSERT_TRUE(identical(qd_from_hex(to_hex(a)), a));
  }
  EXPECT_THROW(qd_from_hex("0x1p+0,0x0p+0"), FormatError);
}
