#include <gtest/gtest.h>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "mpmm/report.hpp"
#include "mpmm/tuning_table.hpp"
#include "mpmm/verify.hpp"

using namespace mpmm;
using namespace mpmm::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("mpmm_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

struct EnvGuard {
  std::string name;
  EnvGuard(const char* n, const char* value) : name(n) { ::setenv(n, value, 1); }
  ~EnvGuard() { ::unsetenv(name.c_str()); }
};

}  // namespace

TEST(CliParse, Dims) {
  EXPECT_EQ(parse_dims("128,256"), (std::vector<std::size_t>{128, 256}));
  EXPECT_EQ(parse_dims("128+-1"), (std::vector<std::size_t>{127, 128, 129}));
  EXPECT_EQ(parse_dims("128\xC2\xB1" "1,64"), (std::vector<std::size_t>{64, 127, 128, 129}));
  EXPECT_THROW(parse_dims("1"), UsageError);
  EXPECT_THROW(parse_dims("12a"), UsageError);
  EXPECT_THROW(parse_dims("-5"), UsageError);
  EXPECT_THROW(parse_dims(""), UsageError);
}

TEST(CliParse, ThreadsAndCap) {
  EXPECT_EQ(parse_threads("1,2,4"), (std::vector<int>{1, 2, 4}));
  EXPECT_THROW(parse_threads("0"), UsageError);
  EXPECT_EQ(cap_threads({1, 2, 4, 8}), (std::vector<int>{1, 2, 4, 8}));
  {
    EnvGuard g("MPMM_THREADS_MAX", "2");
    EXPECT_EQ(cap_threads({1, 2, 4, 8}), (std::vector<int>{1, 2}));
    EXPECT_THROW(cap_threads({4}), UsageError);
  }
  {
    EnvGuard g("MPMM_THREADS_MAX", "zero");
    EXPECT_THROW(cap_threads({1}), UsageError);
  }
}

TEST(Cli, DispatchAndUsage) {
  EXPECT_EQ(invoke({}).code, kUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kUsage);
  EXPECT_EQ(invoke({"--help"}).code, kOk);
  auto help = invoke({"tune", "--help"});
  EXPECT_EQ(help.code, kOk);
  EXPECT_NE(help.out.find("--no-predict"), std::string::npos);
  EXPECT_EQ(invoke({"tune", "--prec", "dd"}).code, kUsage);  // missing required flags
  EXPECT_EQ(invoke({"tune", "--prec", "xx", "--dims", "8", "--nmin", "4", "--out", "x"}).code, kUsage);
  EXPECT_EQ(invoke({"bench", "--prec", "dd", "--dim", "8", "--algo", "warp"}).code, kUsage);
  EXPECT_EQ(invoke({"report", "--in", "x", "--format", "pdf"}).code, kUsage);
}

TEST(Cli, TuneWritesTableAndCsvWithExpectedGrid) {
  const auto out = scratch("grid.tbl");
  auto r = invoke({"tune", "-q", "--prec", "dd", "--dims", "24,32", "--nmin", "4,8", "--threads", "1,2", "--out",
                   out.string(), "--cutoff", "8"});
  ASSERT_EQ(r.code, kOk) << r.err;
  auto table = load_table(out);
  EXPECT_EQ(table.rows.size(), 4u);
  EXPECT_TRUE(fs::exists(out.string() + ".csv"));
  std::ifstream csv(out.string() + ".csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, kCsvHeader);

  // report reproduces the library rendering of the same table.
  auto rep = invoke({"report", "--in", out.string(), "--format", "csv"});
  ASSERT_EQ(rep.code, kOk);
  std::ostringstream lib;
  write_csv(lib, table);
  EXPECT_EQ(rep.out, lib.str());

  auto win = invoke({"report", "--in", out.string(), "--format", "winners"});
  ASSERT_EQ(win.code, kOk);
  std::ostringstream libw;
  write_winners(libw, table);
  EXPECT_EQ(win.out, libw.str());
}

TEST(Cli, TuneHonoursThreadCap) {
  EnvGuard g("MPMM_THREADS_MAX", "1");
  const auto out = scratch("capped.tbl");
  auto r = invoke({"tune", "-q", "--prec", "dd", "--dims", "16", "--nmin", "4", "--threads", "1,2,4", "--out",
                   out.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  auto table = load_table(out);
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_EQ(table.rows[0].threads, 1);
}

TEST(Cli, IoFailuresUseIoCode) {
  EXPECT_EQ(invoke({"tune", "-q", "--prec", "dd", "--dims", "8", "--nmin", "4", "--out", "/nonexistent/x.tbl"}).code,
            kIo);
  EXPECT_EQ(invoke({"report", "--in", "/nonexistent/x.tbl"}).code, kIo);
  const auto bad = scratch("bad.tbl");
  std::ofstream(bad) << "mpmmtune v9\n";
  EXPECT_EQ(invoke({"report", "--in", bad.string()}).code, kIo);
}

TEST(Cli, TimedCommandsRefuseToOverlap) {
  const auto lock_path = scratch("held.lock");
  EnvGuard g("MPMM_LOCK_FILE", lock_path.c_str());
  int fd = ::open(lock_path.c_str(), O_RDWR | O_CREAT, 0666);
  ASSERT_GE(fd, 0);
  ASSERT_EQ(::flock(fd, LOCK_EX | LOCK_NB), 0);
  // flock locks belong to the open file description, so a second open in
  // this process contends just like another process would.
  auto r = invoke({"bench", "--prec", "dd", "--dim", "8"});
  EXPECT_EQ(r.code, kIo);
  EXPECT_NE(r.err.find("holds"), std::string::npos);
  ::flock(fd, LOCK_UN);
  ::close(fd);
  EXPECT_EQ(invoke({"bench", "--prec", "dd", "--dim", "8"}).code, kOk);
}

TEST(Cli, VerifyMatchesLibraryAndFlagsFaults) {
  auto r = invoke({"verify", "--prec", "dd", "--dims", "2"});
  ASSERT_EQ(r.code, kOk) << r.out << r.err;
  // n = 2: every difference is exactly zero.
  for (const auto& c : verify_kernels(PrecisionSpec::dd(), 2)) {
    if (c.name.find("oracle") == std::string::npos) EXPECT_EQ(c.value, 0.0) << c.name;
    EXPECT_NE(r.out.find(c.name), std::string::npos);
  }
  auto bad = invoke({"verify", "--prec", "dd", "--dims", "16", "--inject-fault"});
  EXPECT_EQ(bad.code, kVerifyFailed);
  EXPECT_NE(bad.out.find("FAIL"), std::string::npos);
}

TEST(Cli, PredictPrintsOneRowPerCandidate) {
  auto r = invoke({"predict", "--prec", "dd", "--dim", "32", "--nmin", "16,8", "--strassen", "--cutoff", "8"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("(a)\t(b)\t(c)\t(d)\trel.diff\t(e)"), std::string::npos);
  std::istringstream in(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) rows += line.starts_with("dd\t");
  EXPECT_EQ(rows, 2);
  EXPECT_NE(r.out.find("predicted_best"), std::string::npos);
}

TEST(Cli, BenchReportsTime) {
  auto r = invoke({"bench", "--prec", "ap:96", "--dim", "12", "--algo", "strassen:4:2", "--threads", "2"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("time_s="), std::string::npos);
}
