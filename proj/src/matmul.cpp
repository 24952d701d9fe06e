#include "mpmm/matmul.hpp"

#include <algorithm>
#include <charconv>
#include <exception>

namespace mpmm {

namespace {

using Index = long long;

template <ExtendedFloat T>
void require_compatible(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& c, int threads) {
  if (a.cols() != b.rows()) {
    throw UsageError("inner dimensions differ: " + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()));
  }
  if (a.precision() != b.precision() || a.precision() != c.precision()) {
    throw UsageError("operands have different precisions");
  }
  if (c.rows() != a.rows() || c.cols() != b.cols()) throw UsageError("output has wrong shape");
  if (threads < 1) throw UsageError("thread count must be positive");
}

template <ExtendedFloat T>
void require_finite(const Matrix<T>& c) {
  for (const auto& x : c.data()) {
    if (!x.is_finite()) throw RangeError("matrix product overflowed");
  }
}

std::size_t parse_size(std::string_view text, std::string_view whole) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError("bad algorithm '" + std::string(whole) + "'");
  }
  return v;
}

// Recursion body; `c` is n x n and fully overwritten.
template <ExtendedFloat T>
void strassen_recursive(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& c, const StrassenOptions& opts,
                        int threads, StrassenCounters& counters) {
  if (a.rows() <= opts.cutoff) {
    ++counters.leaf_products;
    matmul_block_into(a, b, c, opts.leaf_n_min, threads);
    return;
  }
  StrassenCounters local;
  auto p = strassen_products(a, b, opts, threads, &local);
  counters += local;
  strassen_combine(p, c, &counters);
}

// h x h quadrant (qi, qj) of the zero-padded 2h x 2h square.
template <ExtendedFloat T>
Matrix<T> quadrant(const Matrix<T>& m, std::size_t qi, std::size_t qj, std::size_t h) {
  Matrix<T> out(h, h, m.precision());
  const std::size_t r0 = qi * h;
  const std::size_t c0 = qj * h;
  const std::size_t rows = std::min(h, m.rows() - std::min(m.rows(), r0));
  const std::size_t cols = std::min(h, m.cols() - std::min(m.cols(), c0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = m(r0 + i, c0 + j);
  }
  return out;
}

template <ExtendedFloat T>
Matrix<T> add(const Matrix<T>& x, const Matrix<T>& y, StrassenCounters& counters) {
  Matrix<T> out(x.rows(), x.cols(), x.precision());
  auto o = out.data();
  auto xs = x.data();
  auto ys = y.data();
  for (std::size_t k = 0; k < o.size(); ++k) assign_add(o[k], xs[k], ys[k]);
  ++counters.additions;
  return out;
}

template <ExtendedFloat T>
Matrix<T> sub(const Matrix<T>& x, const Matrix<T>& y, StrassenCounters& counters) {
  Matrix<T> out(x.rows(), x.cols(), x.precision());
  auto o = out.data();
  auto xs = x.data();
  auto ys = y.data();
  for (std::size_t k = 0; k < o.size(); ++k) assign_sub(o[k], xs[k], ys[k]);
  ++counters.additions;
  return out;
}

}  // namespace

void AlgorithmChoice::validate() const {
  switch (kind) {
    case Algorithm::Simple: return;
    case Algorithm::Block:
      if (!n_min || *n_min == 0) throw UsageError("block algorithm needs a positive n_min");
      return;
    case Algorithm::Strassen:
      if (!cutoff || *cutoff < 2) throw UsageError("Strassen needs a cutoff >= 2");
      if (!n_min || *n_min == 0) throw UsageError("Strassen needs a positive leaf n_min");
      return;
  }
}

std::string_view algorithm_name(Algorithm kind) {
  switch (kind) {
    case Algorithm::Simple: return "simple";
    case Algorithm::Block: return "block";
    case Algorithm::Strassen: return "strassen";
  }
  return "?";
}

std::string to_string(const AlgorithmChoice& choice) {
  choice.validate();
  switch (choice.kind) {
    case Algorithm::Simple: return "simple";
    case Algorithm::Block: return "block:" + std::to_string(*choice.n_min);
    case Algorithm::Strassen:
      return "strassen:" + std::to_string(*choice.cutoff) + ":" + std::to_string(*choice.n_min);
  }
  return "?";
}

AlgorithmChoice parse_algorithm(std::string_view text) {
  if (text == "simple") return AlgorithmChoice::simple();
  if (text.starts_with("block:")) {
    auto choice = AlgorithmChoice::block(parse_size(text.substr(6), text));
    choice.validate();
    return choice;
  }
  if (text.starts_with("strassen:")) {
    auto rest = text.substr(9);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw UsageError("bad algorithm '" + std::string(text) + "'");
    auto choice = AlgorithmChoice::strassen(parse_size(rest.substr(0, colon), text),
                                            parse_size(rest.substr(colon + 1), text));
    choice.validate();
    return choice;
  }
  throw UsageError("bad algorithm '" + std::string(text) + "'");
}

StrassenCounters& StrassenCounters::operator+=(const StrassenCounters& o) {
  multiplications += o.multiplications;
  additions += o.additions;
  leaf_products += o.leaf_products;
  levels = std::max(levels, o.levels);
  return *this;
}

template <ExtendedFloat T>
void matmul_simple_into(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& c, int threads) {
  require_compatible(a, b, c, threads);
  const Index m = static_cast<Index>(a.rows());
  const Index n = static_cast<Index>(b.cols());
  const std::size_t l = a.cols();
#pragma omp parallel num_threads(threads) if (threads > 1)
  {
    MulAdd<T> madd(a.precision());
#pragma omp for schedule(static)
    for (Index i = 0; i < m; ++i) {
      for (Index j = 0; j < n; ++j) {
        T& acc = c(i, j);
        set_zero(acc);
        for (std::size_t k = 0; k < l; ++k) madd(acc, a(i, k), b(k, j));
      }
    }
  }
  require_finite(c);
}

template <ExtendedFloat T>
Matrix<T> matmul_simple(const Matrix<T>& a, const Matrix<T>& b, int threads) {
  Matrix<T> c(a.rows(), b.cols(), a.precision());
  matmul_simple_into(a, b, c, threads);
  return c;
}

template <ExtendedFloat T>
void matmul_block_into(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& c, std::size_t n_min, int threads) {
  require_compatible(a, b, c, threads);
  const BlockPartition part = make_partition(a.rows(), a.cols(), b.cols(), n_min);
  const Index row_blocks = static_cast<Index>(part.M);
  const Index col_blocks = static_cast<Index>(part.N);
#pragma omp parallel num_threads(threads) if (threads > 1)
  {
    MulAdd<T> madd(a.precision());
#pragma omp for collapse(2) schedule(static)
    for (Index bi = 0; bi < row_blocks; ++bi) {
      for (Index bj = 0; bj < col_blocks; ++bj) {
        const std::size_t i0 = static_cast<std::size_t>(bi) * n_min;
        const std::size_t i1 = i0 + part.row_extents[bi];
        const std::size_t j0 = static_cast<std::size_t>(bj) * n_min;
        const std::size_t j1 = j0 + part.col_extents[bj];
        for (std::size_t i = i0; i < i1; ++i) {
          for (std::size_t j = j0; j < j1; ++j) set_zero(c(i, j));
        }
        // C_ij += A_ik B_kj over k-blocks in order; i-k-j inside the block
        // keeps B and C row-contiguous without changing any element's
        // k-order.
        for (std::size_t bk = 0; bk < part.L; ++bk) {
          const std::size_t k0 = bk * n_min;
          const std::size_t k1 = k0 + part.inner_extents[bk];
          for (std::size_t i = i0; i < i1; ++i) {
            auto c_row = c.row(i);
            for (std::size_t k = k0; k < k1; ++k) {
              const T& aik = a(i, k);
              auto b_row = b.row(k);
              for (std::size_t j = j0; j < j1; ++j) madd(c_row[j], aik, b_row[j]);
            }
          }
        }
      }
    }
  }
  require_finite(c);
}

template <ExtendedFloat T>
Matrix<T> matmul_block(const Matrix<T>& a, const Matrix<T>& b, std::size_t n_min, int threads) {
  Matrix<T> c(a.rows(), b.cols(), a.precision());
  matmul_block_into(a, b, c, n_min, threads);
  return c;
}

template <ExtendedFloat T>
std::array<Matrix<T>, 7> strassen_products(const Matrix<T>& a, const Matrix<T>& b, const StrassenOptions& opts,
                                           int threads, StrassenCounters* counters) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw UsageError("Strassen requires square operands of equal order");
  }
  if (a.precision() != b.precision()) throw UsageError("operands have different precisions");
  if (threads < 1) throw UsageError("thread count must be positive");
  const std::size_t n = a.rows();
  if (n < 2) throw UsageError("Strassen step needs order >= 2");
  const std::size_t h = (n + 1) / 2;
  const auto& prec = a.precision();

  const Matrix<T> a11 = quadrant(a, 0, 0, h);
  const Matrix<T> a12 = quadrant(a, 0, 1, h);
  const Matrix<T> a21 = quadrant(a, 1, 0, h);
  const Matrix<T> a22 = quadrant(a, 1, 1, h);
  const Matrix<T> b11 = quadrant(b, 0, 0, h);
  const Matrix<T> b12 = quadrant(b, 0, 1, h);
  const Matrix<T> b21 = quadrant(b, 1, 0, h);
  const Matrix<T> b22 = quadrant(b, 1, 1, h);

  std::array<Matrix<T>, 7> p{Matrix<T>(h, h, prec), Matrix<T>(h, h, prec), Matrix<T>(h, h, prec),
                             Matrix<T>(h, h, prec), Matrix<T>(h, h, prec), Matrix<T>(h, h, prec),
                             Matrix<T>(h, h, prec)};
  std::array<StrassenCounters, 7> local{};
  std::array<std::exception_ptr, 7> errors{};
  const int team = std::min(threads, 7);

#pragma omp parallel for num_threads(team) schedule(static, 1) if (team > 1)
  for (int q = 0; q < 7; ++q) {
    try {
      auto& cnt = local[q];
      ++cnt.multiplications;
      switch (q) {
        case 0:  // P1 = (A11 + A22)(B11 + B22)
          strassen_recursive(add(a11, a22, cnt), add(b11, b22, cnt), p[0], opts, 1, cnt);
          break;
        case 1:  // P2 = (A21 + A22) B11
          strassen_recursive(add(a21, a22, cnt), b11, p[1], opts, 1, cnt);
          break;
        case 2:  // P3 = A11 (B12 - B22)
          strassen_recursive(a11, sub(b12, b22, cnt), p[2], opts, 1, cnt);
          break;
        case 3:  // P4 = A22 (B21 - B11)
          strassen_recursive(a22, sub(b21, b11, cnt), p[3], opts, 1, cnt);
          break;
        case 4:  // P5 = (A11 + A12) B22
          strassen_recursive(add(a11, a12, cnt), b22, p[4], opts, 1, cnt);
          break;
        case 5:  // P6 = (A21 - A11)(B11 + B12)
          strassen_recursive(sub(a21, a11, cnt), add(b11, b12, cnt), p[5], opts, 1, cnt);
          break;
        case 6:  // P7 = (A12 - A22)(B21 + B22)
          strassen_recursive(sub(a12, a22, cnt), add(b21, b22, cnt), p[6], opts, 1, cnt);
          break;
      }
    } catch (...) {
      errors[q] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  if (counters) {
    StrassenCounters total;
    for (const auto& cnt : local) total += cnt;
    total.levels += 1;
    *counters += total;
  }
  return p;
}

template <ExtendedFloat T>
void strassen_combine(const std::array<Matrix<T>, 7>& p, Matrix<T>& c, StrassenCounters* counters) {
  const std::size_t h = p[0].rows();
  const std::size_t n = c.rows();
  if (c.cols() != n || n > 2 * h || 2 * h - n > 1) throw UsageError("strassen_combine: output shape mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t qi = i / h;
    const std::size_t r = i % h;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t qj = j / h;
      const std::size_t s = j % h;
      T& out = c(i, j);
      if (qi == 0 && qj == 0) {  // C11 = P1 + P4 - P5 + P7
        assign_add(out, p[0](r, s), p[3](r, s));
        assign_sub(out, out, p[4](r, s));
        assign_add(out, out, p[6](r, s));
      } else if (qi == 0) {  // C12 = P3 + P5
        assign_add(out, p[2](r, s), p[4](r, s));
      } else if (qj == 0) {  // C21 = P2 + P4
        assign_add(out, p[1](r, s), p[3](r, s));
      } else {  // C22 = P1 + P3 - P2 + P6
        assign_add(out, p[0](r, s), p[2](r, s));
        assign_sub(out, out, p[1](r, s));
        assign_add(out, out, p[5](r, s));
      }
    }
  }
  if (counters) counters->additions += 8;
}

template <ExtendedFloat T>
void matmul_strassen_into(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& c, const StrassenOptions& opts,
                          int threads, StrassenCounters* counters) {
  require_compatible(a, b, c, threads);
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw UsageError("Strassen requires square operands");
  }
  if (opts.cutoff < 2) throw UsageError("Strassen cutoff must be >= 2");
  if (opts.leaf_n_min == 0) throw UsageError("leaf block size must be positive");
  StrassenCounters local;
  strassen_recursive(a, b, c, opts, threads, local);
  if (counters) *counters += local;
  require_finite(c);
}

template <ExtendedFloat T>
Matrix<T> matmul_strassen(const Matrix<T>& a, const Matrix<T>& b, std::size_t cutoff, std::size_t leaf_n_min,
                          int threads) {
  Matrix<T> c(a.rows(), b.cols(), a.precision());
  matmul_strassen_into(a, b, c, StrassenOptions{cutoff, leaf_n_min}, threads);
  return c;
}

template <ExtendedFloat T>
void multiply_into(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& c, const AlgorithmChoice& choice,
                   int threads) {
  choice.validate();
  switch (choice.kind) {
    case Algorithm::Simple: matmul_simple_into(a, b, c, threads); return;
    case Algorithm::Block: matmul_block_into(a, b, c, *choice.n_min, threads); return;
    case Algorithm::Strassen:
      matmul_strassen_into(a, b, c, StrassenOptions{*choice.cutoff, *choice.n_min}, threads);
      return;
  }
}

template <ExtendedFloat T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b, const AlgorithmChoice& choice, int threads) {
  Matrix<T> c(a.rows(), b.cols(), a.precision());
  multiply_into(a, b, c, choice, threads);
  return c;
}

#define MPMM_INSTANTIATE_MATMUL(T)                                                                           \
  template void matmul_simple_into(const Matrix<T>&, const Matrix<T>&, Matrix<T>&, int);                     \
  template Matrix<T> matmul_simple(const Matrix<T>&, const Matrix<T>&, int);                                 \
  template void matmul_block_into(const Matrix<T>&, const Matrix<T>&, Matrix<T>&, std::size_t, int);         \
  template Matrix<T> matmul_block(const Matrix<T>&, const Matrix<T>&, std::size_t, int);                     \
  template void matmul_strassen_into(const Matrix<T>&, const Matrix<T>&, Matrix<T>&, const StrassenOptions&, \
                                     int, StrassenCounters*);                                                \
  template Matrix<T> matmul_strassen(const Matrix<T>&, const Matrix<T>&, std::size_t, std::size_t, int);     \
  template std::array<Matrix<T>, 7> strassen_products(const Matrix<T>&, const Matrix<T>&,                    \
                                                      const StrassenOptions&, int, StrassenCounters*);       \
  template void strassen_combine(const std::array<Matrix<T>, 7>&, Matrix<T>&, StrassenCounters*);            \
  template void multiply_into(const Matrix<T>&, const Matrix<T>&, Matrix<T>&, const AlgorithmChoice&, int);  \
  template Matrix<T> multiply(const Matrix<T>&, const Matrix<T>&, const AlgorithmChoice&, int);

MPMM_INSTANTIATE_MATMUL(DoubleDouble)
MPMM_INSTANTIATE_MATMUL(QuadDouble)
MPMM_INSTANTIATE_MATMUL(BigFloat)

#undef MPMM_INSTANTIATE_MATMUL

}  // namespace mpmm
