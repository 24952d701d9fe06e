#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "mpmm/matrix.hpp"

namespace mpmm {

enum class Algorithm { Simple, Block, Strassen };

// Which kernel to run and with what knobs. Block needs n_min; Strassen
// needs a recursion cutoff (>= 2) and a block size for its leaf products.
struct AlgorithmChoice {
  Algorithm kind = Algorithm::Block;
  std::optional<std::size_t> n_min;
  std::optional<std::size_t> cutoff;

  static AlgorithmChoice simple() { return {Algorithm::Simple, std::nullopt, std::nullopt}; }
  static AlgorithmChoice block(std::size_t n_min) { return {Algorithm::Block, n_min, std::nullopt}; }
  static AlgorithmChoice strassen(std::size_t cutoff, std::size_t leaf_n_min) {
    return {Algorithm::Strassen, leaf_n_min, cutoff};
  }

  // Throws UsageError if the knobs required by `kind` are missing or bad.
  void validate() const;

  friend bool operator==(const AlgorithmChoice&, const AlgorithmChoice&) = default;
};

// "simple", "block:<n_min>", "strassen:<cutoff>:<leaf n_min>"
std::string to_string(const AlgorithmChoice& choice);
AlgorithmChoice parse_algorithm(std::string_view text);
std::string_view algorithm_name(Algorithm kind);

inline constexpr std::size_t kDefaultStrassenCutoff = 64;
inline constexpr std::size_t kDefaultBlockSize = 64;

// Work counters for one Strassen call, summed over all recursion levels.
struct StrassenCounters {
  std::size_t multiplications = 0;  // recursive sub-products issued
  std::size_t additions = 0;        // quadrant-sized additions/subtractions
  std::size_t leaf_products = 0;    // products delegated to the blocked kernel
  std::size_t levels = 0;           // deepest recursion level reached

  StrassenCounters& operator+=(const StrassenCounters& o);
};

struct StrassenOptions {
  std::size_t cutoff = kDefaultStrassenCutoff;
  std::size_t leaf_n_min = kDefaultBlockSize;
};

// C[i][j] = sum_k A[i][k] * B[k][j], accumulated in k order. Rows of C are
// split across threads; the result does not depend on `threads`.
template <ExtendedFloat T>
void matmul_simple_into(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& c, int threads);
template <ExtendedFloat T>
Matrix<T> matmul_simple(const Matrix<T>& a, const Matrix<T>& b, int threads = 1);

// Blocked product over an n_min grid with ragged final blocks. Each output
// block is owned by one thread and accumulated over k-blocks in order, so
// every element sees the same addition sequence as matmul_simple.
template <ExtendedFloat T>
void matmul_block_into(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& c, std::size_t n_min,
                       int threads);
template <ExtendedFloat T>
Matrix<T> matmul_block(const Matrix<T>& a, const Matrix<T>& b, std::size_t n_min, int threads = 1);

// Strassen recursion on square operands. Odd orders are zero-padded to the
// next even order at each level and the result cropped. Orders at or below
// `cutoff` go to matmul_block with `leaf_n_min`. With threads > 1 the seven
// top-level products run concurrently; deeper levels are serial.
template <ExtendedFloat T>
void matmul_strassen_into(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& c, const StrassenOptions& opts,
                          int threads, StrassenCounters* counters = nullptr);
template <ExtendedFloat T>
Matrix<T> matmul_strassen(const Matrix<T>& a, const Matrix<T>& b, std::size_t cutoff, std::size_t leaf_n_min,
                          int threads = 1);

// One Strassen level: the seven quadrant products P1..P7 (each of order
// ceil(n/2)), with sub-products computed by the recursion under `opts`.
template <ExtendedFloat T>
std::array<Matrix<T>, 7> strassen_products(const Matrix<T>& a, const Matrix<T>& b, const StrassenOptions& opts,
                                           int threads, StrassenCounters* counters = nullptr);

// Assembles the n x n product from P1..P7, dropping padding.
template <ExtendedFloat T>
void strassen_combine(const std::array<Matrix<T>, 7>& p, Matrix<T>& c, StrassenCounters* counters = nullptr);

template <ExtendedFloat T>
void multiply_into(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& c, const AlgorithmChoice& choice,
                   int threads);
template <ExtendedFloat T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b, const AlgorithmChoice& choice, int threads = 1);

}  // namespace mpmm
