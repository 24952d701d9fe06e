#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mpmm::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,      // anything not covered below (e.g. arithmetic range error)
  kUsage = 2,
  kIo = 3,           // unreadable/unwritable files, malformed tables, lock held
  kVerifyFailed = 4,
  kMeasurement = 5,  // non-positive timings or sweep points that failed
};

// Each command takes the arguments after its own name.
int cmd_tune(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_verify(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_predict(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_report(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_bench(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// args[0] is the subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Helpers shared with tests.
std::vector<std::size_t> parse_dims(const std::string& text);
std::vector<std::size_t> parse_sizes(const std::string& text);
std::vector<int> parse_threads(const std::string& text);
std::vector<int> cap_threads(std::vector<int> threads);  // applies MPMM_THREADS_MAX

}  // namespace mpmm::cli
