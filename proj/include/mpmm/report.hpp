#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "mpmm/tuner.hpp"

namespace mpmm {

// Host string split into the two CSV columns. Unparseable input keeps the
// whole text as the cpu name and 0 threads.
struct HostInfo {
  std::string cpu;
  unsigned hw_threads = 0;
};

HostInfo parse_host(const std::string& host);

inline constexpr const char* kCsvHeader =
    "prec,bits,n,threads,best_nmin,block_time_s,prediction_time_s,predicted_s,rel_diff,simple_time_s,"
    "strassen_time_s,winner,host_cpu,host_threads";

// One line per row, sorted by (prec, n, threads). Times use %.17g so they
// parse back to the same doubles; a skipped simple timing is empty.
void write_csv(std::ostream& out, const TuningTable& table);

// Winners for one thread count: precisions down, dims across. Cells are
// to_string(AlgorithmChoice), "gap" for a failed point and "-" when the
// point was not in the sweep.
struct WinnersGrid {
  int threads = 1;
  std::vector<PrecisionSpec> precisions;
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> cells;  // [precision][dim]
};

std::vector<WinnersGrid> build_winners_grid(const TuningTable& table);

// Aligned text, one section per thread count, host line first.
void write_winners(std::ostream& out, const TuningTable& table);

}  // namespace mpmm
