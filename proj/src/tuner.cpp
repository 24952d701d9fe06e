#include "mpmm/tuner.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>

#include "mpmm/generators.hpp"
#include "mpmm/tuning_table.hpp"

namespace mpmm {

namespace {

template <class V>
void sort_unique(std::vector<V>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void warm_up(const PrecisionSpec& prec, const TuningConfig& cfg, int threads) {
  with_scalar_type(prec, [&]<class T>(std::type_identity<T>) {
    auto [a, b] = generate_test_pair<T>(cfg.dims.front(), prec);
    (void)matmul_block(a, b, cfg.block_candidates.front(), threads);
  });
}

}  // namespace

void TuningConfig::validate() {
  if (precisions.empty()) throw UsageError("no precisions to tune");
  if (dims.empty()) throw UsageError("no dimensions to tune");
  if (block_candidates.empty()) throw UsageError("no block-size candidates");
  if (thread_counts.empty()) throw UsageError("no thread counts");
  sort_unique(precisions);
  sort_unique(dims);
  sort_unique(block_candidates);
  sort_unique(thread_counts);
  if (dims.front() < 2) throw UsageError("dimensions must be >= 2");
  if (block_candidates.front() == 0) throw UsageError("block sizes must be positive");
  if (thread_counts.front() < 1) throw UsageError("thread counts must be positive");
  if (strassen.cutoff < 2) throw UsageError("Strassen cutoff must be >= 2");
  if (strassen.leaf_n_min && *strassen.leaf_n_min == 0) throw UsageError("leaf block size must be positive");
  if (slice_multiplier == 0) throw UsageError("slice multiplier must be positive");
  timing.validate();
}

std::vector<std::size_t> expand_dims(std::span<const std::size_t> dims, bool plus_minus_one) {
  std::vector<std::size_t> out;
  for (std::size_t n : dims) {
    if (plus_minus_one && n > 0) out.push_back(n - 1);
    out.push_back(n);
    if (plus_minus_one) out.push_back(n + 1);
  }
  sort_unique(out);
  return out;
}

Algorithm pick_fastest(double block_time_s, double strassen_time_s, std::optional<double> simple_time_s) {
  Algorithm best = Algorithm::Block;
  double best_time = block_time_s;
  if (strassen_time_s < best_time) {
    best = Algorithm::Strassen;
    best_time = strassen_time_s;
  }
  if (simple_time_s && *simple_time_s < best_time) best = Algorithm::Simple;
  return best;
}

TuningResult tune_one(const PrecisionSpec& prec, std::size_t n, int threads, const TuningConfig& cfg,
                      PhaseTimes* phases) {
  if (n < 2) throw UsageError("tune_one: n must be >= 2");
  if (threads < 1) throw UsageError("tune_one: threads must be positive");

  return with_scalar_type(prec, [&]<class T>(std::type_identity<T>) {
    auto [a, b] = generate_test_pair<T>(n, prec);
    const auto& timing = cfg.timing;

    Stopwatch selection_clock(timing.clock);
    BlockSelection selection =
        cfg.use_prediction
            ? select_block_size(a, b, cfg.block_candidates, threads, timing, cfg.slice_multiplier)
            : select_block_size_exhaustive(a, b, cfg.block_candidates, threads, timing);
    const double selection_s = selection_clock.elapsed();

    const auto best = std::find_if(selection.records.begin(), selection.records.end(),
                                   [&](const PredictionRecord& r) { return r.n_min == selection.best_n_min; });

    Stopwatch measurement_clock(timing.clock);
    Matrix<T> c(n, n, prec);
    TuningResult r;
    r.prec = prec;
    r.n = n;
    r.threads = threads;
    r.best_n_min = selection.best_n_min;
    r.prediction_time_s = best->slice_time_s;
    r.predicted_s = best->predicted_full_s;
    if (cfg.use_prediction) {
      r.block_time_s = measure(timing, [&] { matmul_block_into(a, b, c, r.best_n_min, threads); });
    } else {
      r.block_time_s = best->slice_time_s;
    }
    r.rel_diff = rel_diff(r.predicted_s, r.block_time_s);

    if (n <= cfg.simple_max_n) {
      r.simple_time_s = measure(timing, [&] { matmul_simple_into(a, b, c, threads); });
    }
    const StrassenOptions so{cfg.strassen.cutoff, cfg.strassen.leaf_n_min.value_or(r.best_n_min)};
    if (n <= so.cutoff && so.leaf_n_min == r.best_n_min) {
      // No recursion: Strassen is this very block call, so a second timing
      // would only compare noise.
      r.strassen_time_s = r.block_time_s;
    } else {
      r.strassen_time_s = measure(timing, [&] { matmul_strassen_into(a, b, c, so, threads); });
    }

    switch (pick_fastest(r.block_time_s, r.strassen_time_s, r.simple_time_s)) {
      case Algorithm::Block: r.winner = AlgorithmChoice::block(r.best_n_min); break;
      case Algorithm::Strassen: r.winner = AlgorithmChoice::strassen(so.cutoff, so.leaf_n_min); break;
      case Algorithm::Simple: r.winner = AlgorithmChoice::simple(); break;
    }
    if (phases) {
      phases->selection_s = selection_s;
      phases->measurement_s = measurement_clock.elapsed();
    }
    return r;
  });
}

void TuningTable::sort_rows() {
  std::stable_sort(rows.begin(), rows.end(), [](const TuningResult& x, const TuningResult& y) {
    if (x.prec != y.prec) return x.prec < y.prec;
    if (x.n != y.n) return x.n < y.n;
    return x.threads < y.threads;
  });
}

void TuningTable::recompute_thresholds() {
  std::set<std::pair<PrecisionSpec, int>> keys;
  for (const auto& r : rows) keys.emplace(r.prec, r.threads);
  thresholds.clear();
  for (const auto& [prec, threads] : keys) {
    thresholds.push_back({prec, threads, extract_threshold(rows, prec, threads)});
  }
}

std::optional<std::size_t> extract_threshold(std::span<const TuningResult> rows, const PrecisionSpec& prec,
                                             int threads) {
  std::map<std::size_t, Algorithm> winners;
  for (const auto& r : rows) {
    if (r.prec == prec && r.threads == threads) winners[r.n] = r.winner.kind;
  }
  std::optional<std::size_t> n_star;
  for (auto it = winners.rbegin(); it != winners.rend() && it->second == Algorithm::Strassen; ++it) {
    n_star = it->first;
  }
  return n_star;
}

TuningTable tune_sweep(TuningConfig cfg, std::ostream* log) {
  cfg.validate();
  TuningTable table;
  table.host = host_description();
  Stopwatch total(cfg.timing.clock);

  for (const auto& prec : cfg.precisions) {
    for (int threads : cfg.thread_counts) {
      if (cfg.warmup) warm_up(prec, cfg, threads);
      for (std::size_t n : cfg.dims) {
        try {
          PhaseTimes phases;
          table.rows.push_back(tune_one(prec, n, threads, cfg, &phases));
          table.prediction_phase_s += phases.selection_s;
          if (log) {
            const auto& r = table.rows.back();
            *log << to_string(prec) << " n=" << n << " threads=" << threads << " n_min=" << r.best_n_min
                 << " block=" << r.block_time_s << "s strassen=" << r.strassen_time_s
                 << "s winner=" << to_string(r.winner) << '\n';
          }
        } catch (const std::exception& e) {
          table.gaps.push_back({prec, n, threads, e.what()});
          if (log) *log << to_string(prec) << " n=" << n << " threads=" << threads << " FAILED: " << e.what() << '\n';
        }
      }
    }
  }

  table.total_tuning_time_s = total.elapsed();
  table.sort_rows();
  table.recompute_thresholds();
  if (cfg.output) save_table(table, *cfg.output);
  return table;
}

std::string_view to_string(LookupPath path) {
  switch (path) {
    case LookupPath::Exact: return "exact";
    case LookupPath::NearestSmaller: return "nearest-smaller";
    case LookupPath::Threshold: return "threshold";
    case LookupPath::Default: return "default";
  }
  return "?";
}

LookupResult lookup_best(const TuningTable& table, const PrecisionSpec& prec, std::size_t n, int threads) {
  if (table.rows.empty() && table.thresholds.empty()) throw UsageError("lookup_best: empty tuning table");

  const TuningResult* nearest = nullptr;
  for (const auto& r : table.rows) {
    if (r.prec != prec || r.threads != threads) continue;
    if (r.n == n) return {r.winner, LookupPath::Exact};
    if (r.n < n && (!nearest || r.n > nearest->n)) nearest = &r;
  }
  if (nearest) return {nearest->winner, LookupPath::NearestSmaller};

  for (const auto& t : table.thresholds) {
    if (t.prec == prec && t.threads == threads && t.n_star && n >= *t.n_star) {
      return {AlgorithmChoice::strassen(kDefaultStrassenCutoff, kDefaultBlockSize), LookupPath::Threshold};
    }
  }
  return {AlgorithmChoice::block(kDefaultBlockSize), LookupPath::Default};
}

}  // namespace mpmm
