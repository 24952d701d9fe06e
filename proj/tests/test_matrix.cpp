#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "mpmm/generators.hpp"
#include "mpmm/matrix_io.hpp"
#include "mpmm/norms.hpp"
#include "oracle.hpp"

using namespace mpmm;

TEST(Matrix, ShapeAndPrecisionChecks) {
  EXPECT_THROW(Matrix<DoubleDouble>(0, 3, PrecisionSpec::dd()), UsageError);
  EXPECT_THROW(Matrix<DoubleDouble>(2, 2, PrecisionSpec::qd()), UsageError);
  Matrix<BigFloat> m(2, 3, PrecisionSpec::ap(77));
  EXPECT_EQ(m(1, 2).bits(), 77u);
  EXPECT_EQ(m.row(1).size(), 3u);
}

TEST(Partition, CoversEveryIndexOnce) {
  for (std::size_t n_min : {1, 3, 8, 64, 100}) {
    auto p = make_partition(100, 37, 65, n_min);
    auto sum = [](const std::vector<std::size_t>& v) {
      std::size_t s = 0;
      for (auto e : v) {
        EXPECT_GE(e, 1u);
        s += e;
      }
      return s;
    };
    EXPECT_EQ(sum(p.row_extents), 100u);
    EXPECT_EQ(sum(p.inner_extents), 37u);
    EXPECT_EQ(sum(p.col_extents), 65u);
    EXPECT_EQ(p.M, (100 + n_min - 1) / n_min);
    for (std::size_t k = 0; k + 1 < p.M; ++k) EXPECT_EQ(p.row_extents[k], n_min);
  }
  EXPECT_THROW(make_partition(4, 4, 4, 0), UsageError);
}

TEST(Partition, NMinAtLeastNIsOneBlock) {
  auto p = make_partition(17, 17, 17, 64);
  EXPECT_EQ(p.M, 1u);
  EXPECT_EQ(p.row_extents.front(), 17u);
}

TEST(Generators, TestPairEntriesAgainstOracle) {
  // A[i][j] = sqrt(5) (i + j - 1), B[i][j] = sqrt(3) (n - i), 1-based.
  const std::size_t n = 9;
  auto [a, b] = generate_test_pair<DoubleDouble>(n, PrecisionSpec::dd());
  oracle::Mp want(600), got(600);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      mpfr_sqrt_ui(want.v, 5, MPFR_RNDN);
      mpfr_mul_ui(want.v, want.v, i + j + 1, MPFR_RNDN);
      oracle::set_dd(got, a(i, j));
      ASSERT_LE(oracle::rel_err(got, want), 0x1p-106);
      ASSERT_EQ(a(i, j).hi, std::sqrt(5.0 * static_cast<double>((i + j + 1) * (i + j + 1))));

      mpfr_sqrt_ui(want.v, 3, MPFR_RNDN);
      mpfr_mul_ui(want.v, want.v, n - (i + 1), MPFR_RNDN);
      oracle::set_dd(got, b(i, j));
      if (i + 1 == n) {
        ASSERT_EQ(b(i, j).hi, 0.0);
      } else {
        ASSERT_LE(oracle::rel_err(got, want), 0x1p-106);
      }
    }
  }
}

TEST(Generators, ApEntriesAreCorrectlyRounded) {
  const auto prec = PrecisionSpec::ap(300);
  auto [a, b] = generate_test_pair<BigFloat>(5, prec);
  oracle::Mp want(300);
  mpfr_sqrt_ui(want.v, 5 * 7 * 7, MPFR_RNDN);  // A[3][4] (0-based) has k = 7
  EXPECT_TRUE(mpfr_equal_p(want.v, a(2, 4).get()));
  (void)b;
}

TEST(Generators, RandomIntegersAreReproducibleAndBounded) {
  auto x = random_integer_matrix<DoubleDouble>(6, 7, -8, 8, 42, PrecisionSpec::dd());
  auto y = random_integer_matrix<DoubleDouble>(6, 7, -8, 8, 42, PrecisionSpec::dd());
  EXPECT_TRUE(identical(x, y));
  for (const auto& v : x.data()) {
    EXPECT_GE(v.hi, -8.0);
    EXPECT_LE(v.hi, 8.0);
    EXPECT_EQ(v.hi, std::round(v.hi));
  }
}

template <class T>
void io_round_trip(const PrecisionSpec& prec) {
  auto [a, b] = generate_test_pair<T>(6, prec);
  std::stringstream ss;
  write_matrix(ss, a);
  auto back = read_matrix(ss);
  ASSERT_TRUE(std::holds_alternative<Matrix<T>>(back));
  EXPECT_TRUE(identical(std::get<Matrix<T>>(back), a));
}

TEST(MatrixIo, RoundTripsBitExactly) {
  io_round_trip<DoubleDouble>(PrecisionSpec::dd());
  io_round_trip<QuadDouble>(PrecisionSpec::qd());
  io_round_trip<BigFloat>(PrecisionSpec::ap(200));
}

TEST(MatrixIo, RejectsMalformedInput) {
  std::istringstream bad1("2 2 dd\n0x1p+0,0x0p+0 0x1p+0,0x0p+0\n");
  EXPECT_THROW(read_matrix(bad1), FormatError);
  std::istringstream bad2("2 x dd\n");
  EXPECT_THROW(read_matrix(bad2), FormatError);
}

TEST(Norms, FrobeniusRelDiff) {
  const auto dd = PrecisionSpec::dd();
  const long xv[] = {3, 0, 0, 4};
  const long yv[] = {3, 0, 0, 0};
  auto x = matrix_from_integers<DoubleDouble>(2, 2, xv, dd);
  auto y = matrix_from_integers<DoubleDouble>(2, 2, yv, dd);
  EXPECT_DOUBLE_EQ(frobenius_rel_diff(x, y), 4.0 / 3.0);
  EXPECT_EQ(frobenius_rel_diff(x, x), 0.0);
  Matrix<DoubleDouble> zero(2, 2, dd);
  EXPECT_DOUBLE_EQ(frobenius_rel_diff(x, zero), 5.0);
  Matrix<DoubleDouble> other(2, 3, dd);
  EXPECT_THROW(frobenius_rel_diff(x, other), UsageError);
}
