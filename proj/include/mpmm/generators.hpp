#pragma once

#include <utility>

#include "mpmm/matrix.hpp"

namespace mpmm {

// The benchmark pair, with 1-based i, j:
//   A[i][j] = sqrt(5) * (i + j - 1),   B[i][j] = sqrt(3) * (n - i).
// Entries are irrational (except B's zero last row), so every element uses
// the full mantissa. Each entry is rounded once from sqrt(5 k^2) or
// sqrt(3 k^2), which makes the result deterministic and, for AP,
// correctly rounded.
template <ExtendedFloat T>
std::pair<Matrix<T>, Matrix<T>> generate_test_pair(std::size_t n, const PrecisionSpec& prec);

// Uniform random integers in [lo, hi], reproducible from `seed`.
template <ExtendedFloat T>
Matrix<T> random_integer_matrix(std::size_t rows, std::size_t cols, long lo, long hi, unsigned seed,
                                const PrecisionSpec& prec);

}  // namespace mpmm
