#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpmm/matmul.hpp"
#include "mpmm/precision.hpp"
#include "mpmm/predictor.hpp"
#include "mpmm/timing.hpp"

namespace mpmm {

struct StrassenPolicy {
  std::size_t cutoff = kDefaultStrassenCutoff;
  // Leaf block size; the tuned best n_min when unset.
  std::optional<std::size_t> leaf_n_min;
};

struct TuningConfig {
  std::vector<PrecisionSpec> precisions;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> block_candidates;
  std::vector<int> thread_counts;
  StrassenPolicy strassen;
  TimingPolicy timing;
  // The simple kernel is not timed above this order.
  std::size_t simple_max_n = 512;
  // false: time every candidate on the full product instead of predicting.
  bool use_prediction = true;
  std::size_t slice_multiplier = kDefaultSliceMultiplier;
  // One untimed multiply per (precision, threads) before its grid points.
  bool warmup = true;
  std::optional<std::filesystem::path> output;

  // Sorts candidates and dims; throws UsageError on empty lists, dims < 2,
  // non-positive thread counts or block sizes.
  void validate();
};

// Each n becomes {n - 1, n, n + 1} when plus_minus_one is set; result is
// sorted and de-duplicated.
std::vector<std::size_t> expand_dims(std::span<const std::size_t> dims, bool plus_minus_one);

// One grid point. Times in seconds.
struct TuningResult {
  PrecisionSpec prec;
  std::size_t n = 0;
  int threads = 1;
  std::size_t best_n_min = 0;             // chosen block size
  double block_time_s = 0.0;              // measured block time at best_n_min
  double prediction_time_s = 0.0;         // slice time behind the prediction
  double predicted_s = 0.0;               // predicted full block time
  double rel_diff = 0.0;                  // |predicted - block| / block
  std::optional<double> simple_time_s;    // absent when skipped
  double strassen_time_s = 0.0;
  AlgorithmChoice winner;

  friend bool operator==(const TuningResult&, const TuningResult&) = default;
};

// Fastest of the measured kernels; ties prefer Block, then Strassen, then
// Simple.
Algorithm pick_fastest(double block_time_s, double strassen_time_s, std::optional<double> simple_time_s);

// Wall time split of one tune_one call.
struct PhaseTimes {
  double selection_s = 0.0;    // step 1: block-size selection
  double measurement_s = 0.0;  // step 2: timing the three kernels
};

// The three tuning steps for one (precision, n, threads): select n_min,
// time simple/block/Strassen, pick the winner.
TuningResult tune_one(const PrecisionSpec& prec, std::size_t n, int threads, const TuningConfig& cfg,
                      PhaseTimes* phases = nullptr);

struct ThresholdEntry {
  PrecisionSpec prec;
  int threads = 1;
  std::optional<std::size_t> n_star;

  friend bool operator==(const ThresholdEntry&, const ThresholdEntry&) = default;
};

// A grid point that failed; the sweep carries on without it.
struct GridGap {
  PrecisionSpec prec;
  std::size_t n = 0;
  int threads = 1;
  std::string reason;

  friend bool operator==(const GridGap&, const GridGap&) = default;
};

struct TuningTable {
  std::string host;
  std::vector<TuningResult> rows;
  std::vector<ThresholdEntry> thresholds;
  std::vector<GridGap> gaps;
  double total_tuning_time_s = 0.0;
  double prediction_phase_s = 0.0;  // step-1 wall time summed over the grid

  // Orders rows by (prec, n, threads).
  void sort_rows();
  // Rebuilds `thresholds` from `rows` for every (prec, threads) present.
  void recompute_thresholds();

  friend bool operator==(const TuningTable&, const TuningTable&) = default;
};

// Smallest grid n* such that Strassen wins at every grid point >= n* for
// (prec, threads); nullopt when the largest point is not a Strassen win.
std::optional<std::size_t> extract_threshold(std::span<const TuningResult> rows, const PrecisionSpec& prec,
                                             int threads);

// Runs tune_one over precisions x threads x dims, serially. Failed points
// become gaps. Writes the table to cfg.output when set. Progress lines go to
// `log` when non-null.
TuningTable tune_sweep(TuningConfig cfg, std::ostream* log = nullptr);

enum class LookupPath { Exact, NearestSmaller, Threshold, Default };

std::string_view to_string(LookupPath path);

struct LookupResult {
  AlgorithmChoice choice;
  LookupPath path = LookupPath::Default;
  bool is_fallback() const { return path != LookupPath::Exact; }
};

// Exact row, else the nearest smaller n for (prec, threads), else the
// Strassen threshold, else Block with the default block size.
LookupResult lookup_best(const TuningTable& table, const PrecisionSpec& prec, std::size_t n, int threads);

}  // namespace mpmm
