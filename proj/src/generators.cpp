#include "mpmm/generators.hpp"

#include <random>

namespace mpmm {

namespace {

// round_prec(sqrt(c) * k) via sqrt(c * k^2), a single rounding.
template <ExtendedFloat T>
T scaled_root(unsigned long c, unsigned long k, const PrecisionSpec& prec, BigFloat& wide) {
  if (k == 0) return zero_of<T>(prec);
  mpfr_sqrt_ui(wide.get(), c * k * k, MPFR_RNDN);
  return round_from<T>(wide, prec);
}

}  // namespace

template <ExtendedFloat T>
std::pair<Matrix<T>, Matrix<T>> generate_test_pair(std::size_t n, const PrecisionSpec& prec) {
  if (n == 0) throw UsageError("generate_test_pair: n must be positive");
  Matrix<T> a(n, n, prec);
  Matrix<T> b(n, n, prec);
  BigFloat wide(conversion_bits(prec));

  // A depends only on i + j; B only on i.
  std::vector<T> a_diag;
  a_diag.reserve(2 * n - 1);
  for (std::size_t s = 1; s <= 2 * n - 1; ++s) a_diag.push_back(scaled_root<T>(5, s, prec, wide));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = a_diag[i + j];
  }
  for (std::size_t i = 0; i < n; ++i) {
    T value = scaled_root<T>(3, n - (i + 1), prec, wide);
    for (std::size_t j = 0; j < n; ++j) b(i, j) = value;
  }
  return {std::move(a), std::move(b)};
}

template <ExtendedFloat T>
Matrix<T> random_integer_matrix(std::size_t rows, std::size_t cols, long lo, long hi, unsigned seed,
                                const PrecisionSpec& prec) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(lo, hi);
  std::vector<long> values(rows * cols);
  for (auto& v : values) v = dist(rng);
  return matrix_from_integers<T>(rows, cols, values, prec);
}

template std::pair<Matrix<DoubleDouble>, Matrix<DoubleDouble>> generate_test_pair(std::size_t,
                                                                                  const PrecisionSpec&);
template std::pair<Matrix<QuadDouble>, Matrix<QuadDouble>> generate_test_pair(std::size_t,
                                                                              const PrecisionSpec&);
template std::pair<Matrix<BigFloat>, Matrix<BigFloat>> generate_test_pair(std::size_t, const PrecisionSpec&);

template Matrix<DoubleDouble> random_integer_matrix(std::size_t, std::size_t, long, long, unsigned,
                                                    const PrecisionSpec&);
template Matrix<QuadDouble> random_integer_matrix(std::size_t, std::size_t, long, long, unsigned,
                                                  const PrecisionSpec&);
template Matrix<BigFloat> random_integer_matrix(std::size_t, std::size_t, long, long, unsigned,
                                                const PrecisionSpec&);

}  // namespace mpmm
