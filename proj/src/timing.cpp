#include "mpmm/timing.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <thread>
#include <vector>

#include "mpmm/error.hpp"

namespace mpmm {

std::string_view to_string(Aggregator agg) {
  switch (agg) {
    case Aggregator::Median: return "median";
    case Aggregator::Min: return "min";
    case Aggregator::Mean: return "mean";
  }
  return "?";
}

Aggregator parse_aggregator(std::string_view text) {
  if (text == "median") return Aggregator::Median;
  if (text == "min") return Aggregator::Min;
  if (text == "mean") return Aggregator::Mean;
  throw UsageError("unknown aggregator '" + std::string(text) + "'");
}

double monotonic_seconds() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

std::string host_description() {
  std::string cpu = "unknown";
  std::ifstream info("/proc/cpuinfo");
  for (std::string line; std::getline(info, line);) {
    if (line.starts_with("model name")) {
      auto colon = line.find(':');
      if (colon != std::string::npos) {
        cpu = line.substr(line.find_first_not_of(' ', colon + 1));
        break;
      }
    }
  }
  std::replace(cpu.begin(), cpu.end(), ';', ',');
  return "cpu=" + cpu + ";hw_threads=" + std::to_string(std::thread::hardware_concurrency());
}

void TimingPolicy::validate() const {
  if (warmup_runs < 0) throw UsageError("warmup_runs must be >= 0");
  if (measured_runs < 1) throw UsageError("measured_runs must be >= 1");
  if (!clock) throw UsageError("timing policy has no clock");
}

double measure(const TimingPolicy& policy, const std::function<void()>& work) {
  policy.validate();
  for (int i = 0; i < policy.warmup_runs; ++i) work();

  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(policy.measured_runs));
  for (int i = 0; i < policy.measured_runs; ++i) {
    const double t0 = policy.clock();
    work();
    const double t1 = policy.clock();
    const double dt = t1 - t0;
    if (!(dt > 0.0)) throw MeasurementError("non-positive elapsed time " + std::to_string(dt) + " s");
    samples.push_back(dt);
  }

  switch (policy.aggregator) {
    case Aggregator::Min: return *std::min_element(samples.begin(), samples.end());
    case Aggregator::Mean:
      return std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
    case Aggregator::Median: {
      std::sort(samples.begin(), samples.end());
      const std::size_t mid = samples.size() / 2;
      return samples.size() % 2 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
    }
  }
  return samples.front();
}

}  // namespace mpmm
