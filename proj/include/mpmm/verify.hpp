#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mpmm/precision.hpp"

namespace mpmm {

struct VerifyCase {
  std::string name;
  double value = 0.0;  // measured difference (mismatch count for exact cases)
  double bound = 0.0;
  bool passed = false;
};

struct VerifyOptions {
  std::size_t cutoff = 16;  // Strassen cutoff on the test pair
  std::vector<int> threads{1, 2};
  // Perturbs one element of every Strassen result, to prove the checks bite.
  bool inject_fault = false;
};

// Cross-kernel and oracle checks at order n:
//   identity      A * I == A for simple and block, I * I == I for Strassen
//   integer       entries in [-8, 8]: simple == block(2, 4, n) == Strassen(cutoff 2)
//   block         test pair, frobenius_rel_diff(block, simple) <= 4 n u
//   strassen      test pair, frobenius_rel_diff(Strassen, simple) <= 100 n u
//   oracle        simple and Strassen against a product carried at 4x the bits
//   threads       every kernel bit-identical across the thread list
// The integer check runs at min(n, 64) so sums stay exact at small AP widths.
std::vector<VerifyCase> verify_kernels(const PrecisionSpec& prec, std::size_t n, const VerifyOptions& opts = {});

}  // namespace mpmm
