#include "mpmm/matrix.hpp"

namespace mpmm {

namespace {

std::vector<std::size_t> extents(std::size_t dim, std::size_t n_min) {
  std::vector<std::size_t> out;
  out.reserve((dim + n_min - 1) / n_min);
  for (std::size_t start = 0; start < dim; start += n_min) {
    out.push_back(std::min(n_min, dim - start));
  }
  return out;
}

}  // namespace

BlockPartition make_partition(std::size_t m, std::size_t l, std::size_t n, std::size_t n_min) {
  if (n_min == 0) throw UsageError("block size must be positive");
  if (m == 0 || l == 0 || n == 0) throw UsageError("partition dimensions must be positive");
  BlockPartition p;
  p.n_min = n_min;
  p.row_extents = extents(m, n_min);
  p.inner_extents = extents(l, n_min);
  p.col_extents = extents(n, n_min);
  p.M = p.row_extents.size();
  p.L = p.inner_extents.size();
  p.N = p.col_extents.size();
  return p;
}

}  // namespace mpmm
