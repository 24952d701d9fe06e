#include "cli/commands.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "mpmm/error.hpp"
#include "mpmm/matmul.hpp"
#include "mpmm/generators.hpp"
#include "mpmm/predictor.hpp"
#include "mpmm/report.hpp"
#include "mpmm/tuner.hpp"
#include "mpmm/tuning_table.hpp"
#include "mpmm/verify.hpp"

namespace mpmm::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class Int>
Int parse_number(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size() || v < 0) throw std::invalid_argument(s);
    return static_cast<Int>(v);
  } catch (const std::exception&) {
    throw UsageError(std::string("bad ") + what + " '" + s + "'");
  }
}

std::vector<PrecisionSpec> parse_precisions(const std::string& text) {
  std::vector<PrecisionSpec> out;
  for (const auto& tok : split(text, ',')) out.push_back(parse_precision(tok));
  return out;
}

// CLI11 consumes a reversed argument vector.
void parse(CLI::App& app, const std::vector<std::string>& args) {
  std::vector<std::string> rev(args.rbegin(), args.rend());
  app.parse(rev);
}

class BenchLock {
 public:
  BenchLock() {
    const char* env = std::getenv("MPMM_LOCK_FILE");
    path_ = env && *env ? env : "/tmp/mpmm-bench.lock";
    fd_ = ::open(path_.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0666);
    if (fd_ < 0) throw IoError("cannot open lock file " + path_);
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
      ::close(fd_);
      throw IoError("another timed run holds " + path_);
    }
  }
  ~BenchLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  BenchLock(const BenchLock&) = delete;
  BenchLock& operator=(const BenchLock&) = delete;

 private:
  std::string path_;
  int fd_ = -1;
};

void probe_writable(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::app);
  if (!f) throw IoError("cannot write '" + path.string() + "'");
}

struct TimingFlags {
  int reps = 1;
  int warmups = 0;
  std::string agg = "median";

  void add_to(CLI::App& app) {
    app.add_option("--reps", reps, "measured runs per timing");
    app.add_option("--warmups", warmups, "untimed runs before each timing");
    app.add_option("--agg", agg, "median|min|mean");
  }
  TimingPolicy policy() const {
    TimingPolicy p;
    p.measured_runs = reps;
    p.warmup_runs = warmups;
    p.aggregator = parse_aggregator(agg);
    p.validate();
    return p;
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// Maps library exceptions to exit codes. CLI11 help requests print usage.
template <class F>
int guarded(CLI::App& app, std::ostream& out, std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << app.get_name() << ": " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << app.get_name() << ": " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << app.get_name() << ": " << e.what() << '\n';
    return kIo;
  } catch (const FormatError& e) {
    err << app.get_name() << ": " << e.what() << '\n';
    return kIo;
  } catch (const MeasurementError& e) {
    err << app.get_name() << ": " << e.what() << '\n';
    return kMeasurement;
  } catch (const std::exception& e) {
    err << app.get_name() << ": " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& tok : split(text, ',')) {
    std::string base = tok;
    bool pm = false;
    for (const char* mark : {"\xC2\xB1" "1", "+-1"}) {
      const std::string m = mark;
      if (base.size() > m.size() && base.ends_with(m)) {
        base.resize(base.size() - m.size());
        pm = true;
        break;
      }
    }
    const auto n = parse_number<std::size_t>(base, "dimension");
    if (n < 2) throw UsageError("dimensions must be >= 2");
    const std::size_t one[] = {n};
    auto expanded = expand_dims(one, pm);
    out.insert(out.end(), expanded.begin(), expanded.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& tok : split(text, ',')) {
    const auto v = parse_number<std::size_t>(tok, "size");
    if (v == 0) throw UsageError("sizes must be positive");
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_threads(const std::string& text) {
  std::vector<int> out;
  for (const auto& tok : split(text, ',')) {
    const auto v = parse_number<int>(tok, "thread count");
    if (v < 1) throw UsageError("thread counts must be positive");
    out.push_back(v);
  }
  return out;
}

std::vector<int> cap_threads(std::vector<int> threads) {
  const char* env = std::getenv("MPMM_THREADS_MAX");
  if (!env || !*env) return threads;
  const int cap = parse_number<int>(env, "MPMM_THREADS_MAX");
  if (cap < 1) throw UsageError("MPMM_THREADS_MAX must be positive");
  std::erase_if(threads, [cap](int t) { return t > cap; });
  if (threads.empty()) throw UsageError("every thread count exceeds MPMM_THREADS_MAX=" + std::to_string(cap));
  return threads;
}

int cmd_tune(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Tune block size and algorithm over a grid", "mpmm tune");
  std::string prec, dims, nmin, threads = "1", out_path, csv_path;
  bool no_predict = false, quiet = false, no_warmup = false;
  std::size_t slice_mult = kDefaultSliceMultiplier, cutoff = kDefaultStrassenCutoff, simple_max = 512;
  std::optional<std::size_t> leaf;
  TimingFlags timing;
  app.add_option("--prec", prec, "dd|qd|ap:<bits>[,...]")->required();
  app.add_option("--dims", dims, "dimensions; 128+-1 expands to 127,128,129")->required();
  app.add_option("--nmin", nmin, "block-size candidates")->required();
  app.add_option("--threads", threads, "thread counts");
  app.add_option("--out", out_path, "tuning table path")->required();
  app.add_option("--csv", csv_path, "CSV report path (default <out>.csv)");
  app.add_flag("--no-predict", no_predict, "time every candidate on the full product");
  app.add_option("--slice-mult", slice_mult, "slice height in block rows");
  app.add_option("--cutoff", cutoff, "Strassen recursion cutoff");
  app.add_option("--leaf-nmin", leaf, "Strassen leaf block size (default: tuned n_min)");
  app.add_option("--simple-max-n", simple_max, "largest n at which the simple kernel is timed");
  app.add_flag("--no-warmup", no_warmup, "skip the untimed multiply before each (prec, threads)");
  app.add_flag("-q,--quiet", quiet, "no progress lines");
  timing.add_to(app);

  return guarded(app, out, err, [&] {
    parse(app, args);
    TuningConfig cfg;
    cfg.precisions = parse_precisions(prec);
    cfg.dims = parse_dims(dims);
    cfg.block_candidates = parse_sizes(nmin);
    cfg.thread_counts = cap_threads(parse_threads(threads));
    cfg.strassen = {cutoff, leaf};
    cfg.timing = timing.policy();
    cfg.simple_max_n = simple_max;
    cfg.use_prediction = !no_predict;
    cfg.slice_multiplier = slice_mult;
    cfg.warmup = !no_warmup;
    cfg.validate();
    if (csv_path.empty()) csv_path = out_path + ".csv";
    probe_writable(out_path);
    probe_writable(csv_path);

    BenchLock lock;
    TuningTable table = tune_sweep(cfg, quiet ? nullptr : &err);
    save_table(table, out_path);
    {
      std::ofstream csv(csv_path);
      write_csv(csv, table);
      if (!csv) throw IoError("failed writing '" + csv_path + "'");
    }

    out << "points " << table.rows.size() << " gaps " << table.gaps.size() << '\n';
    out << "total_time_s " << table.total_tuning_time_s << '\n';
    out << "prediction_phase_s " << table.prediction_phase_s << (no_predict ? " (exhaustive)" : "") << '\n';
    for (const auto& t : table.thresholds) {
      out << "threshold " << to_string(t.prec) << " threads=" << t.threads << ' '
          << (t.n_star ? "n>=" + std::to_string(*t.n_star) : std::string("none")) << '\n';
    }
    out << "table " << out_path << "\ncsv " << csv_path << '\n';
    return table.gaps.empty() ? kOk : kMeasurement;
  });
}

int cmd_verify(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Cross-check the kernels against each other and an oracle", "mpmm verify");
  std::string prec, dims, threads = "1,2";
  VerifyOptions opts;
  app.add_option("--prec", prec, "dd|qd|ap:<bits>[,...]")->required();
  app.add_option("--dims", dims, "dimensions")->required();
  app.add_option("--cutoff", opts.cutoff, "Strassen cutoff on the test pair");
  app.add_option("--threads", threads, "thread counts compared for invariance");
  app.add_flag("--inject-fault", opts.inject_fault, "perturb Strassen results (checks must fail)");

  return guarded(app, out, err, [&] {
    parse(app, args);
    const auto precs = parse_precisions(prec);
    const auto ns = parse_dims(dims);
    opts.threads = cap_threads(parse_threads(threads));
    bool ok = true;
    for (const auto& p : precs) {
      for (auto n : ns) {
        for (const auto& c : verify_kernels(p, n, opts)) {
          ok = ok && c.passed;
          out << to_string(p) << " n=" << n << ' ' << c.name << " value=" << fmt("%.3e", c.value)
              << " bound=" << fmt("%.3e", c.bound) << ' ' << (c.passed ? "PASS" : "FAIL") << '\n';
        }
      }
    }
    return ok ? kOk : kVerifyFailed;
  });
}

int cmd_predict(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Slice prediction next to measured full block times", "mpmm predict");
  std::string prec, nmin;
  std::size_t n = 0, cutoff = kDefaultStrassenCutoff;
  int threads = 1;
  bool strassen = false;
  PredictionExperimentOptions opts;
  TimingFlags timing;
  app.add_option("--prec", prec, "dd|qd|ap:<bits>")->required();
  app.add_option("--dim", n, "matrix order")->required();
  app.add_option("--nmin", nmin, "block-size candidates")->required();
  app.add_option("--threads", threads, "thread count");
  app.add_option("--slice-mult", opts.slice_multiplier, "slice height in block rows");
  app.add_flag("--strassen", strassen, "also time Strassen, column (e)");
  app.add_option("--cutoff", cutoff, "Strassen cutoff");
  timing.add_to(app);

  return guarded(app, out, err, [&] {
    parse(app, args);
    const auto p = parse_precision(prec);
    if (n < 2) throw UsageError("--dim must be >= 2");
    if (threads < 1) throw UsageError("thread count must be positive");
    threads = cap_threads({threads}).front();
    auto candidates = parse_sizes(nmin);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    opts.with_strassen = strassen;
    opts.strassen_cutoff = cutoff;
    const auto policy = timing.policy();

    BenchLock lock;
    const auto ex = run_prediction_experiment(p, n, candidates, threads, policy, opts);

    out << "# host " << host_description() << '\n';
    out << "# n=" << n << " (a) n_min  (b) full time  (c) slice time  (d) predicted  (e) Strassen\n";
    out << "prec\tthr\t(a)\t(b)\t(c)\t(d)\trel.diff\t(e)\tslice_rows\n";
    for (const auto& row : ex.rows) {
      const auto& r = row.record;
      out << to_string(p) << '\t' << threads << '\t' << r.n_min
          << (r.n_min == ex.predicted_best_n_min ? "*" : "") << '\t' << fmt("%.4g", row.full_time_s) << '\t'
          << fmt("%.4g", r.slice_time_s) << '\t' << fmt("%.4g", r.predicted_full_s) << '\t'
          << fmt("%.2f%%", 100.0 * row.rel_diff) << '\t'
          << (ex.strassen_time_s ? fmt("%.4g", *ex.strassen_time_s) : std::string("-")) << '\t' << r.slice_rows
          << '\n';
    }
    out << "predicted_best " << ex.predicted_best_n_min << " measured_best " << ex.measured_best_n_min << '\n';
    return kOk;
  });
}

int cmd_report(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Render a tuning table", "mpmm report");
  std::string in_path, format = "csv", out_path;
  app.add_option("--in", in_path, "tuning table")->required();
  app.add_option("--format", format, "csv|winners");
  app.add_option("--out", out_path, "output file (default stdout)");

  return guarded(app, out, err, [&] {
    parse(app, args);
    if (format != "csv" && format != "winners") throw UsageError("--format must be csv or winners");
    const auto table = load_table(in_path);
    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) throw IoError("cannot write '" + out_path + "'");
    }
    std::ostream& dst = out_path.empty() ? out : file;
    if (format == "csv") {
      write_csv(dst, table);
    } else {
      write_winners(dst, table);
    }
    dst.flush();
    if (!dst) throw IoError("failed writing report");
    return kOk;
  });
}

int cmd_bench(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Time one kernel on the test pair", "mpmm bench");
  std::string prec, algo = "block:64";
  std::size_t n = 0;
  int threads = 1;
  TimingFlags timing;
  app.add_option("--prec", prec, "dd|qd|ap:<bits>")->required();
  app.add_option("--dim", n, "matrix order")->required();
  app.add_option("--algo", algo, "simple | block:<n_min> | strassen:<cutoff>:<leaf n_min>");
  app.add_option("--threads", threads, "thread count");
  timing.add_to(app);

  return guarded(app, out, err, [&] {
    parse(app, args);
    const auto p = parse_precision(prec);
    const auto choice = parse_algorithm(algo);
    if (n < 2) throw UsageError("--dim must be >= 2");
    if (threads < 1) throw UsageError("thread count must be positive");
    threads = cap_threads({threads}).front();
    const auto policy = timing.policy();

    BenchLock lock;
    const double t = with_scalar_type(p, [&]<class T>(std::type_identity<T>) {
      auto [a, b] = generate_test_pair<T>(n, p);
      Matrix<T> c(n, n, p);
      return measure(policy, [&] { multiply_into(a, b, c, choice, threads); });
    });
    out << to_string(p) << " n=" << n << " threads=" << threads << ' ' << to_string(choice) << " time_s="
        << fmt("%.6g", t) << '\n';
    return kOk;
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  static const std::map<std::string, int (*)(const std::vector<std::string>&, std::ostream&, std::ostream&)>
      commands{{"tune", cmd_tune},
               {"verify", cmd_verify},
               {"predict", cmd_predict},
               {"report", cmd_report},
               {"bench", cmd_bench}};
  auto usage = [&](std::ostream& os) {
    os << "usage: mpmm <command> [options]\n"
          "commands: tune, verify, predict, report, bench (each takes --help)\n";
  };
  if (args.empty()) {
    usage(err);
    return kUsage;
  }
  if (args[0] == "-h" || args[0] == "--help" || args[0] == "help") {
    usage(out);
    return kOk;
  }
  auto it = commands.find(args[0]);
  if (it == commands.end()) {
    err << "mpmm: unknown command '" << args[0] << "'\n";
    usage(err);
    return kUsage;
  }
  return it->second({args.begin() + 1, args.end()}, out, err);
}

}  // namespace mpmm::cli
