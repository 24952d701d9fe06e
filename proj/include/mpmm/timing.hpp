#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>

namespace mpmm {

enum class Aggregator { Median, Min, Mean };

std::string_view to_string(Aggregator agg);
Aggregator parse_aggregator(std::string_view text);

// Seconds on a monotonic clock.
using Clock = std::function<double()>;

double monotonic_seconds();

// "cpu=<model name>;hw_threads=<n>", recorded with every table and report
// so results from different machines are not silently compared.
std::string host_description();

// How one timed quantity is measured: `warmup_runs` untimed calls, then
// `measured_runs` timed calls reduced by `aggregator`. `clock` may be
// replaced for tests.
struct TimingPolicy {
  int warmup_runs = 0;
  int measured_runs = 1;
  Aggregator aggregator = Aggregator::Median;
  Clock clock = monotonic_seconds;

  void validate() const;
};

// Runs `work` under `policy`, returning the aggregated elapsed seconds.
// Throws MeasurementError if any interval is zero or negative.
double measure(const TimingPolicy& policy, const std::function<void()>& work);

// Wall time of a region that is not itself a measurement (tuning phases).
class Stopwatch {
 public:
  explicit Stopwatch(Clock clock = monotonic_seconds) : clock_(std::move(clock)), start_(clock_()) {}
  double elapsed() const { return clock_() - start_; }

 private:
  Clock clock_;
  double start_;
};

}  // namespace mpmm
