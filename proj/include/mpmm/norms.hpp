#pragma once

#include "mpmm/matrix.hpp"

namespace mpmm {

// ||X - Y||_F / ||Y||_F evaluated in the working precision and returned as
// a double. Returns ||X||_F when Y is zero.
template <ExtendedFloat T>
double frobenius_rel_diff(const Matrix<T>& x, const Matrix<T>& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw UsageError("frobenius_rel_diff: shape mismatch");
  }
  if (x.precision() != y.precision()) throw UsageError("frobenius_rel_diff: precision mismatch");

  const auto& prec = x.precision();
  T diff_sq = zero_of<T>(prec);
  T ref_sq = zero_of<T>(prec);
  T d = zero_of<T>(prec);
  MulAdd<T> madd(prec);
  auto xs = x.data();
  auto ys = y.data();
  for (std::size_t k = 0; k < xs.size(); ++k) {
    assign_sub(d, xs[k], ys[k]);
    madd(diff_sq, d, d);
    madd(ref_sq, ys[k], ys[k]);
  }
  T diff_norm = sqrt(diff_sq);
  if (sqrt(ref_sq).to_double() == 0.0) return diff_norm.to_double();
  return (diff_norm / sqrt(ref_sq)).to_double();
}

}  // namespace mpmm
