#include "mpmm/predictor.hpp"

#include <algorithm>
#include <cmath>

#include "mpmm/generators.hpp"
#include "mpmm/matmul.hpp"

namespace mpmm {

namespace {

void require_candidates(std::span<const std::size_t> candidates) {
  if (candidates.empty()) throw UsageError("no block-size candidates");
  if (!std::is_sorted(candidates.begin(), candidates.end())) {
    throw UsageError("block-size candidates must be ascending");
  }
  if (candidates.front() == 0) throw UsageError("block sizes must be positive");
}

}  // namespace

std::size_t slice_rows_for(std::size_t n_min, std::size_t m, std::size_t multiplier) {
  if (n_min == 0 || m == 0 || multiplier == 0) throw UsageError("slice_rows_for: arguments must be positive");
  return std::min(multiplier * n_min, m);
}

double rel_diff(double predicted_s, double actual_s) {
  if (!(actual_s > 0.0)) throw UsageError("rel_diff: actual time must be positive");
  return std::fabs(predicted_s - actual_s) / actual_s;
}

double predict_full_time(double slice_time_s, std::size_t m, std::size_t n_min, std::size_t multiplier) {
  if (!(slice_time_s > 0.0)) throw UsageError("predict_full_time: slice time must be positive");
  PredictionRecord r;
  r.slice_rows = slice_rows_for(n_min, m, multiplier);
  r.full_rows = m;
  return slice_time_s * r.scale_factor();
}

template <ExtendedFloat T>
double time_slice(const Matrix<T>& a, const Matrix<T>& b, std::size_t n_min, int threads,
                  const TimingPolicy& policy, std::size_t multiplier) {
  const std::size_t rows = slice_rows_for(n_min, a.rows(), multiplier);
  if (rows == a.rows()) {
    Matrix<T> c(a.rows(), b.cols(), a.precision());
    return measure(policy, [&] { matmul_block_into(a, b, c, n_min, threads); });
  }
  const Matrix<T> slice = leading_rows(a, rows);
  Matrix<T> c(rows, b.cols(), a.precision());
  return measure(policy, [&] { matmul_block_into(slice, b, c, n_min, threads); });
}

std::size_t choose_block_size(std::span<const PredictionRecord> records) {
  if (records.empty()) throw UsageError("choose_block_size: no records");
  const PredictionRecord* best = &records.front();
  for (const auto& r : records) {
    if (r.predicted_full_s < best->predicted_full_s ||
        (r.predicted_full_s == best->predicted_full_s && r.n_min < best->n_min)) {
      best = &r;
    }
  }
  return best->n_min;
}

template <ExtendedFloat T>
BlockSelection select_block_size(const Matrix<T>& a, const Matrix<T>& b, std::span<const std::size_t> candidates,
                                 int threads, const TimingPolicy& policy, std::size_t multiplier) {
  require_candidates(candidates);
  BlockSelection out;
  for (std::size_t n_min : candidates) {
    PredictionRecord r;
    r.n_min = n_min;
    r.full_rows = a.rows();
    r.slice_rows = slice_rows_for(n_min, a.rows(), multiplier);
    r.slice_time_s = time_slice(a, b, n_min, threads, policy, multiplier);
    r.predicted_full_s = r.slice_time_s * r.scale_factor();
    out.records.push_back(r);
  }
  out.best_n_min = choose_block_size(out.records);
  return out;
}

template <ExtendedFloat T>
BlockSelection select_block_size_exhaustive(const Matrix<T>& a, const Matrix<T>& b,
                                            std::span<const std::size_t> candidates, int threads,
                                            const TimingPolicy& policy) {
  require_candidates(candidates);
  BlockSelection out;
  Matrix<T> c(a.rows(), b.cols(), a.precision());
  for (std::size_t n_min : candidates) {
    PredictionRecord r;
    r.n_min = n_min;
    r.full_rows = a.rows();
    r.slice_rows = a.rows();
    r.slice_time_s = measure(policy, [&] { matmul_block_into(a, b, c, n_min, threads); });
    r.predicted_full_s = r.slice_time_s;
    out.records.push_back(r);
  }
  out.best_n_min = choose_block_size(out.records);
  return out;
}

PredictionExperiment run_prediction_experiment(const PrecisionSpec& prec, std::size_t n,
                                               std::span<const std::size_t> candidates, int threads,
                                               const TimingPolicy& policy,
                                               const PredictionExperimentOptions& options) {
  return with_scalar_type(prec, [&]<class T>(std::type_identity<T>) {
    auto [a, b] = generate_test_pair<T>(n, prec);
    PredictionExperiment ex;
    ex.prec = prec;
    ex.n = n;
    ex.threads = threads;

    auto selection = select_block_size(a, b, candidates, threads, policy, options.slice_multiplier);
    ex.predicted_best_n_min = selection.best_n_min;

    Matrix<T> c(n, n, prec);
    std::vector<PredictionRecord> measured;
    for (const auto& record : selection.records) {
      PredictionRow row;
      row.record = record;
      row.full_time_s = measure(policy, [&] { matmul_block_into(a, b, c, record.n_min, threads); });
      row.rel_diff = rel_diff(record.predicted_full_s, row.full_time_s);
      ex.rows.push_back(row);
      PredictionRecord m = record;
      m.predicted_full_s = row.full_time_s;
      measured.push_back(m);
    }
    ex.measured_best_n_min = choose_block_size(measured);

    if (options.with_strassen) {
      StrassenOptions so{options.strassen_cutoff, ex.predicted_best_n_min};
      ex.strassen_time_s = measure(policy, [&] { matmul_strassen_into(a, b, c, so, threads); });
    }
    return ex;
  });
}

#define MPMM_INSTANTIATE_PREDICTOR(T)                                                                        \
  template double time_slice(const Matrix<T>&, const Matrix<T>&, std::size_t, int, const TimingPolicy&,      \
                             std::size_t);                                                                   \
  template BlockSelection select_block_size(const Matrix<T>&, const Matrix<T>&, std::span<const std::size_t>, \
                                            int, const TimingPolicy&, std::size_t);                          \
  template BlockSelection select_block_size_exhaustive(const Matrix<T>&, const Matrix<T>&,                   \
                                                       std::span<const std::size_t>, int, const TimingPolicy&);

MPMM_INSTANTIATE_PREDICTOR(DoubleDouble)
MPMM_INSTANTIATE_PREDICTOR(QuadDouble)
MPMM_INSTANTIATE_PREDICTOR(BigFloat)

#undef MPMM_INSTANTIATE_PREDICTOR

}  // namespace mpmm
