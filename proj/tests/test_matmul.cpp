#include <gtest/gtest.h>

#include "mpmm/generators.hpp"
#include "mpmm/matmul.hpp"
#include "mpmm/norms.hpp"
#include "oracle.hpp"

using namespace mpmm;

namespace {

const PrecisionSpec kDD = PrecisionSpec::dd();

// Plain triple loop on native integers; exact for the small entries used.
std::vector<long> int_product(const std::vector<long>& a, const std::vector<long>& b, std::size_t n) {
  std::vector<long> c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
  return c;
}

std::vector<long> random_ints(std::size_t count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> d(-8, 8);
  std::vector<long> v(count);
  for (auto& x : v) x = d(rng);
  return v;
}

template <class T>
void check_integer_exactness(const PrecisionSpec& prec) {
  for (std::size_t n : {2, 3, 8, 16, 17}) {
    auto av = random_ints(n * n, static_cast<unsigned>(n));
    auto bv = random_ints(n * n, static_cast<unsigned>(n + 100));
    auto a = matrix_from_integers<T>(n, n, av, prec);
    auto b = matrix_from_integers<T>(n, n, bv, prec);
    auto want = matrix_from_integers<T>(n, n, int_product(av, bv, n), prec);
    EXPECT_TRUE(identical(matmul_simple(a, b), want)) << n;
    for (std::size_t nb : {std::size_t{2}, std::size_t{4}, n}) {
      EXPECT_TRUE(identical(matmul_block(a, b, nb), want)) << n << " block " << nb;
    }
    EXPECT_TRUE(identical(matmul_strassen(a, b, 2, 2), want)) << n;
  }
}

}  // namespace

TEST(Matmul, IntegerProductsAreExactInEveryPrecision) {
  check_integer_exactness<DoubleDouble>(kDD);
  check_integer_exactness<QuadDouble>(PrecisionSpec::qd());
  check_integer_exactness<BigFloat>(PrecisionSpec::ap(64));
}

TEST(Matmul, RectangularSimpleAndBlockAgree) {
  auto a = random_integer_matrix<DoubleDouble>(5, 7, -8, 8, 1, kDD);
  auto b = random_integer_matrix<DoubleDouble>(7, 3, -8, 8, 2, kDD);
  auto c = matmul_simple(a, b);
  EXPECT_EQ(c.rows(), 5u);
  EXPECT_EQ(c.cols(), 3u);
  for (std::size_t nb : {1, 2, 3, 5, 100}) EXPECT_TRUE(identical(matmul_block(a, b, nb), c));
}

TEST(Matmul, BlockIsBitIdenticalToSimpleForAnyBlockSize) {
  // Each element accumulates in k order regardless of the blocking.
  for (std::size_t n : {8, 33, 64}) {
    auto [a, b] = generate_test_pair<DoubleDouble>(n, kDD);
    auto ref = matmul_simple(a, b);
    for (std::size_t nb : {std::size_t{1}, std::size_t{5}, std::size_t{16}, n, n + 7}) {
      EXPECT_TRUE(identical(matmul_block(a, b, nb), ref)) << n << " " << nb;
    }
  }
}

TEST(Matmul, StrassenWithinRoundedBound) {
  const double u = kDD.unit_roundoff();
  for (std::size_t n : {63, 64, 100}) {
    auto [a, b] = generate_test_pair<DoubleDouble>(n, kDD);
    auto ref = matmul_simple(a, b);
    for (std::size_t cutoff : {2, 8, 32}) {
      auto s = matmul_strassen(a, b, cutoff, 8);
      EXPECT_LE(frobenius_rel_diff(s, ref), 100.0 * u * static_cast<double>(n)) << n << " " << cutoff;
    }
  }
}

TEST(Matmul, SimpleAgainstWideOracle) {
  // Entries are positive, so the accumulated relative error stays near n u.
  const std::size_t n = 8;
  auto [a, b] = generate_test_pair<DoubleDouble>(n, kDD);
  auto c = matmul_simple(a, b);
  oracle::Mp acc(600), t(600), x(600), y(600), got(600);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      mpfr_set_zero(acc.v, 1);
      for (std::size_t k = 0; k < n; ++k) {
        oracle::set_dd(x, a(i, k));
        oracle::set_dd(y, b(k, j));
        mpfr_mul(t.v, x.v, y.v, MPFR_RNDN);
        mpfr_add(acc.v, acc.v, t.v, MPFR_RNDN);
      }
      oracle::set_dd(got, c(i, j));
      if (!mpfr_zero_p(acc.v)) worst = std::max(worst, oracle::rel_err(got, acc));
    }
  }
  EXPECT_LE(worst, 8.0 * kDD.unit_roundoff());
}

TEST(Matmul, StrassenCountsSevenProductsAndEighteenAdditionsPerLevel) {
  for (std::size_t levels = 1; levels <= 3; ++levels) {
    const std::size_t cutoff = 4;
    const std::size_t n = cutoff << levels;
    auto a = random_integer_matrix<DoubleDouble>(n, n, -8, 8, 3, kDD);
    auto b = random_integer_matrix<DoubleDouble>(n, n, -8, 8, 4, kDD);
    Matrix<DoubleDouble> c(n, n, kDD);
    StrassenCounters cnt;
    matmul_strassen_into(a, b, c, {cutoff, 4}, 1, &cnt);
    std::size_t pow7 = 1, internal = 0, mults = 0;
    for (std::size_t l = 0; l < levels; ++l) {
      internal += pow7;
      pow7 *= 7;
      mults += pow7;
    }
    EXPECT_EQ(cnt.levels, levels);
    EXPECT_EQ(cnt.leaf_products, pow7);
    EXPECT_EQ(cnt.multiplications, mults);
    EXPECT_EQ(cnt.additions, 18 * internal);
    EXPECT_TRUE(identical(c, matmul_simple(a, b)));
  }
}

TEST(Matmul, StrassenOddOrdersArePaddedAndCropped) {
  for (std::size_t n : {3, 5, 9, 17, 31}) {
    auto a = random_integer_matrix<DoubleDouble>(n, n, -8, 8, 5, kDD);
    auto b = random_integer_matrix<DoubleDouble>(n, n, -8, 8, 6, kDD);
    StrassenCounters cnt;
    Matrix<DoubleDouble> c(n, n, kDD);
    matmul_strassen_into(a, b, c, {2, 2}, 1, &cnt);
    EXPECT_TRUE(identical(c, matmul_simple(a, b))) << n;
    EXPECT_GE(cnt.levels, 1u);
  }
}

TEST(Matmul, StrassenAtOrBelowCutoffIsTheBlockKernel) {
  auto [a, b] = generate_test_pair<DoubleDouble>(40, kDD);
  StrassenCounters cnt;
  Matrix<DoubleDouble> c(40, 40, kDD);
  matmul_strassen_into(a, b, c, {64, 16}, 1, &cnt);
  EXPECT_EQ(cnt.levels, 0u);
  EXPECT_EQ(cnt.leaf_products, 1u);
  EXPECT_TRUE(identical(c, matmul_block(a, b, 16)));
}

TEST(Matmul, ResultsDoNotDependOnThreadCount) {
  auto [a, b] = generate_test_pair<DoubleDouble>(70, kDD);
  auto s1 = matmul_simple(a, b, 1);
  auto b1 = matmul_block(a, b, 16, 1);
  auto t1 = matmul_strassen(a, b, 8, 8, 1);
  for (int t : {2, 3, 4, 8}) {
    EXPECT_TRUE(identical(matmul_simple(a, b, t), s1));
    EXPECT_TRUE(identical(matmul_block(a, b, 16, t), b1));
    EXPECT_TRUE(identical(matmul_strassen(a, b, 8, 8, t), t1));
  }
}

TEST(Matmul, ApKernelsAgree) {
  const auto prec = PrecisionSpec::ap(160);
  auto [a, b] = generate_test_pair<BigFloat>(33, prec);
  auto s = matmul_simple(a, b);
  EXPECT_TRUE(identical(matmul_block(a, b, 8, 2), s));
  EXPECT_LE(frobenius_rel_diff(matmul_strassen(a, b, 4, 4, 2), s), 100.0 * 33 * prec.unit_roundoff());
}

TEST(Matmul, BadArgumentsAreUsageErrors) {
  Matrix<DoubleDouble> a(3, 4, kDD), b(3, 4, kDD), sq(3, 3, kDD);
  EXPECT_THROW(matmul_simple(a, b), UsageError);
  EXPECT_THROW(matmul_block(sq, sq, 0), UsageError);
  EXPECT_THROW(matmul_simple(sq, sq, 0), UsageError);
  EXPECT_THROW(matmul_strassen(sq, sq, 1, 2), UsageError);
  EXPECT_THROW(matmul_strassen(a, a, 2, 2), UsageError);
  Matrix<QuadDouble> q(3, 3, PrecisionSpec::qd());
  Matrix<BigFloat> x(3, 3, PrecisionSpec::ap(64)), y(3, 3, PrecisionSpec::ap(65));
  EXPECT_THROW(matmul_simple(x, y), UsageError);
}

TEST(Matmul, OverflowIsRangeError) {
  Matrix<DoubleDouble> a(2, 2, kDD);
  for (auto& v : a.data()) v = DoubleDouble(0x1p600);
  EXPECT_THROW(matmul_simple(a, a), RangeError);
  EXPECT_THROW(matmul_block(a, a, 1), RangeError);
  EXPECT_THROW(matmul_strassen(a, a, 2, 1), RangeError);
}

TEST(AlgorithmChoice, ParseAndPrint) {
  for (const char* text : {"simple", "block:64", "strassen:64:32"}) {
    EXPECT_EQ(to_string(parse_algorithm(text)), text);
  }
  EXPECT_EQ(parse_algorithm("block:16"), AlgorithmChoice::block(16));
  EXPECT_THROW(parse_algorithm("block"), UsageError);
  EXPECT_THROW(parse_algorithm("block:0"), UsageError);
  EXPECT_THROW(parse_algorithm("strassen:1:8"), UsageError);
  EXPECT_THROW(parse_algorithm("winograd"), UsageError);
}

TEST(AlgorithmChoice, MultiplyDispatches) {
  auto a = random_integer_matrix<DoubleDouble>(20, 20, -8, 8, 7, kDD);
  auto ref = matmul_simple(a, a);
  for (const char* text : {"simple", "block:3", "strassen:4:2"}) {
    EXPECT_TRUE(identical(multiply(a, a, parse_algorithm(text), 2), ref)) << text;
  }
}
