#include "mpmm/verify.hpp"

#include <algorithm>

#include "mpmm/generators.hpp"
#include "mpmm/matmul.hpp"
#include "mpmm/norms.hpp"

namespace mpmm {

namespace {

template <ExtendedFloat T>
void perturb(Matrix<T>& c) {
  const auto& prec = c.precision();
  T& x = c(0, 0);
  T delta = x.to_double() == 0.0 ? std::get<T>(make_scalar(1.0, prec))
                                  : x * std::get<T>(make_scalar(0x1p-8, prec));
  x = x + delta;
}

template <ExtendedFloat T>
Matrix<T> strassen_checked(const Matrix<T>& a, const Matrix<T>& b, std::size_t cutoff, std::size_t leaf,
                           int threads, bool fault) {
  Matrix<T> c = matmul_strassen(a, b, cutoff, leaf, threads);
  if (fault) perturb(c);
  return c;
}

template <ExtendedFloat T>
Matrix<BigFloat> widen(const Matrix<T>& m, unsigned bits) {
  Matrix<BigFloat> out(m.rows(), m.cols(), PrecisionSpec::ap(bits));
  for (std::size_t k = 0; k < m.data().size(); ++k) out.data()[k] = to_big(m.data()[k], bits);
  return out;
}

VerifyCase bounded(std::string name, double value, double bound) {
  return {std::move(name), value, bound, value <= bound};
}

VerifyCase exact(std::string name, std::size_t mismatches) {
  return {std::move(name), static_cast<double>(mismatches), 0.0, mismatches == 0};
}

template <ExtendedFloat T>
std::vector<VerifyCase> run(const PrecisionSpec& prec, std::size_t n, const VerifyOptions& opts) {
  std::vector<VerifyCase> cases;
  const bool fault = opts.inject_fault;
  const double u = prec.unit_roundoff();
  const double dn = static_cast<double>(n);

  {
    auto [a, b] = generate_test_pair<T>(n, prec);
    auto id = identity_matrix<T>(n, prec);
    std::size_t bad = 0;
    bad += !identical(matmul_simple(a, id), a);
    bad += !identical(matmul_block(a, id, 2), a);
    // Strassen rounds sums like A11 + A22, so A * I is not exact there;
    // I * I is.
    bad += !identical(strassen_checked(id, id, 2, 2, 1, fault), id);
    cases.push_back(exact("identity", bad));
  }

  {
    const std::size_t k = std::min<std::size_t>(n, 64);
    auto a = random_integer_matrix<T>(k, k, -8, 8, 1u, prec);
    auto b = random_integer_matrix<T>(k, k, -8, 8, 2u, prec);
    auto ref = matmul_simple(a, b);
    std::size_t bad = 0;
    for (std::size_t nb : {std::size_t{2}, std::size_t{4}, k}) bad += !identical(matmul_block(a, b, nb), ref);
    bad += !identical(strassen_checked(a, b, 2, 2, 1, fault), ref);
    cases.push_back(exact("integer n=" + std::to_string(k), bad));
  }

  auto [a, b] = generate_test_pair<T>(n, prec);
  auto simple = matmul_simple(a, b);
  auto block = matmul_block(a, b, std::min<std::size_t>(kDefaultBlockSize, n));
  auto strassen = strassen_checked(a, b, opts.cutoff, std::min<std::size_t>(kDefaultBlockSize, opts.cutoff), 1, fault);
  cases.push_back(bounded("block-vs-simple", frobenius_rel_diff(block, simple), 4.0 * dn * u));
  cases.push_back(bounded("strassen-vs-simple", frobenius_rel_diff(strassen, simple), 100.0 * dn * u));

  {
    const unsigned bits = 4 * prec.bits;
    auto wa = widen(a, bits);
    auto wb = widen(b, bits);
    auto oracle = matmul_simple(wa, wb);
    cases.push_back(bounded("simple-vs-oracle", frobenius_rel_diff(widen(simple, bits), oracle), 4.0 * dn * u));
    cases.push_back(bounded("strassen-vs-oracle", frobenius_rel_diff(widen(strassen, bits), oracle), 100.0 * dn * u));
  }

  {
    std::size_t bad = 0;
    const std::size_t nb = std::min<std::size_t>(kDefaultBlockSize, n);
    const std::size_t leaf = std::min<std::size_t>(kDefaultBlockSize, opts.cutoff);
    for (int t : opts.threads) {
      if (t < 1) throw UsageError("thread counts must be positive");
      bad += !identical(matmul_simple(a, b, t), simple);
      bad += !identical(matmul_block(a, b, nb, t), block);
      // The fault is injected once per result, so faulty results still agree
      // with each other; the check is on the kernels themselves.
      bad += !identical(strassen_checked(a, b, opts.cutoff, leaf, t, fault), strassen);
    }
    cases.push_back(exact("threads", bad));
  }
  return cases;
}

}  // namespace

std::vector<VerifyCase> verify_kernels(const PrecisionSpec& prec, std::size_t n, const VerifyOptions& opts) {
  if (n < 2) throw UsageError("verify: n must be >= 2");
  if (opts.cutoff < 2) throw UsageError("verify: Strassen cutoff must be >= 2");
  if (opts.threads.empty()) throw UsageError("verify: no thread counts");
  return with_scalar_type(prec, [&]<class T>(std::type_identity<T>) { return run<T>(prec, n, opts); });
}

}  // namespace mpmm
