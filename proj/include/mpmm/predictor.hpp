#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mpmm/matrix.hpp"
#include "mpmm/timing.hpp"

namespace mpmm {

// Block-size selection by slice timing.
//
// Multiplying only the leading rows of A against the whole of B keeps B's
// cache footprint identical to the full product, so the blocked kernel's
// time per output row is the same in both. The full time is then the slice
// time scaled by m / slice_rows. The slice height is a fixed multiple of
// the block size (two block rows by default), clamped to m.

inline constexpr std::size_t kDefaultSliceMultiplier = 2;

struct PredictionRecord {
  std::size_t n_min = 0;
  double slice_time_s = 0.0;
  double predicted_full_s = 0.0;
  std::size_t slice_rows = 0;
  std::size_t full_rows = 0;

  // m / slice_rows
  double scale_factor() const { return static_cast<double>(full_rows) / static_cast<double>(slice_rows); }
};

std::size_t slice_rows_for(std::size_t n_min, std::size_t m,
                           std::size_t multiplier = kDefaultSliceMultiplier);

// |predicted - actual| / actual. Throws UsageError unless actual_s > 0.
double rel_diff(double predicted_s, double actual_s);

// slice_time_s * m / slice_rows_for(n_min, m). Throws UsageError unless
// slice_time_s > 0.
double predict_full_time(double slice_time_s, std::size_t m, std::size_t n_min,
                         std::size_t multiplier = kDefaultSliceMultiplier);

// Times matmul_block on the leading slice_rows_for(n_min, m) rows of A
// against all of B. Slice and output storage are allocated before the
// clock starts; the product is discarded.
template <ExtendedFloat T>
double time_slice(const Matrix<T>& a, const Matrix<T>& b, std::size_t n_min, int threads,
                  const TimingPolicy& policy, std::size_t multiplier = kDefaultSliceMultiplier);

struct BlockSelection {
  std::size_t best_n_min = 0;
  std::vector<PredictionRecord> records;
};

// Candidate with the smallest predicted_full_s; ties go to the smaller
// block size.
std::size_t choose_block_size(std::span<const PredictionRecord> records);

// One prediction per candidate (ascending, non-empty), then the argmin.
template <ExtendedFloat T>
BlockSelection select_block_size(const Matrix<T>& a, const Matrix<T>& b, std::span<const std::size_t> candidates,
                                 int threads, const TimingPolicy& policy,
                                 std::size_t multiplier = kDefaultSliceMultiplier);

// Same contract, but every candidate is timed on the full product
// (slice_rows == m). Baseline for the cost comparison.
template <ExtendedFloat T>
BlockSelection select_block_size_exhaustive(const Matrix<T>& a, const Matrix<T>& b,
                                            std::span<const std::size_t> candidates, int threads,
                                            const TimingPolicy& policy);

// Host experiment behind the accuracy tables: for each candidate, the
// slice-based prediction next to the measured full blocked time.
struct PredictionRow {
  PredictionRecord record;
  double full_time_s = 0.0;
  double rel_diff = 0.0;
};

struct PredictionExperiment {
  PrecisionSpec prec;
  std::size_t n = 0;
  int threads = 1;
  std::vector<PredictionRow> rows;
  std::size_t predicted_best_n_min = 0;  // argmin of predictions
  std::size_t measured_best_n_min = 0;   // argmin of full timings
  std::optional<double> strassen_time_s;
};

struct PredictionExperimentOptions {
  std::size_t slice_multiplier = kDefaultSliceMultiplier;
  bool with_strassen = false;
  std::size_t strassen_cutoff = 64;
};

PredictionExperiment run_prediction_experiment(const PrecisionSpec& prec, std::size_t n,
                                               std::span<const std::size_t> candidates, int threads,
                                               const TimingPolicy& policy,
                                               const PredictionExperimentOptions& options = {});

}  // namespace mpmm
