#include "mpmm/tuning_table.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hex_util.hpp"

namespace mpmm {

namespace {

using detail::hex_double;

std::string one_line(std::string text) {
  for (auto& ch : text) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  return text;
}

template <class Int>
Int parse_int(const std::string& token, const char* what) {
  Int v{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
    throw FormatError(std::string("bad ") + what + " '" + token + "'");
  }
  return v;
}

AlgorithmChoice parse_winner(const std::string& token) {
  try {
    return parse_algorithm(token);
  } catch (const UsageError& e) {
    throw FormatError(e.what());
  }
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

TuningResult parse_row(const std::vector<std::string>& f) {
  if (f.size() != 11) throw FormatError("result row needs 11 fields, got " + std::to_string(f.size()));
  TuningResult r;
  r.prec = parse_table_token(f[0]);
  r.n = parse_int<std::size_t>(f[1], "n");
  r.threads = parse_int<int>(f[2], "threads");
  r.best_n_min = parse_int<std::size_t>(f[3], "best_nmin");
  r.block_time_s = detail::parse_double(f[4]);
  r.prediction_time_s = detail::parse_double(f[5]);
  r.predicted_s = detail::parse_double(f[6]);
  r.rel_diff = detail::parse_double(f[7]);
  if (f[8] != "-") r.simple_time_s = detail::parse_double(f[8]);
  r.strassen_time_s = detail::parse_double(f[9]);
  r.winner = parse_winner(f[10]);
  return r;
}

}  // namespace

void write_table(std::ostream& out, const TuningTable& table) {
  out << kTuningTableHeader << '\n';
  if (!table.host.empty()) out << "host " << one_line(table.host) << '\n';
  out << "total_time " << hex_double(table.total_tuning_time_s) << '\n';
  out << "prediction_phase_time " << hex_double(table.prediction_phase_s) << '\n';
  for (const auto& r : table.rows) {
    out << to_table_token(r.prec) << ' ' << r.n << ' ' << r.threads << ' ' << r.best_n_min << ' '
        << hex_double(r.block_time_s) << ' ' << hex_double(r.prediction_time_s) << ' '
        << hex_double(r.predicted_s) << ' ' << hex_double(r.rel_diff) << ' '
        << (r.simple_time_s ? hex_double(*r.simple_time_s) : std::string("-")) << ' '
        << hex_double(r.strassen_time_s) << ' ' << to_string(r.winner) << '\n';
  }
  for (const auto& t : table.thresholds) {
    out << "threshold " << to_table_token(t.prec) << ' ' << t.threads << ' '
        << (t.n_star ? std::to_string(*t.n_star) : std::string("none")) << '\n';
  }
  for (const auto& g : table.gaps) {
    out << "gap " << to_table_token(g.prec) << ' ' << g.n << ' ' << g.threads << ' ' << one_line(g.reason) << '\n';
  }
}

TuningTable read_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty tuning table");
  if (line != kTuningTableHeader) {
    if (line.starts_with("mpmmtune ")) throw FormatError("unsupported tuning table version '" + line + "'");
    throw FormatError("not a tuning table (header '" + line + "')");
  }

  TuningTable table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.starts_with('#')) continue;
    try {
      if (line.starts_with("host ")) {
        table.host = line.substr(5);
        continue;
      }
      auto f = split_ws(line);
      if (f.empty()) continue;
      if (f[0] == "total_time" && f.size() == 2) {
        table.total_tuning_time_s = detail::parse_double(f[1]);
      } else if (f[0] == "prediction_phase_time" && f.size() == 2) {
        table.prediction_phase_s = detail::parse_double(f[1]);
      } else if (f[0] == "threshold") {
        if (f.size() != 4) throw FormatError("threshold line needs 4 fields");
        ThresholdEntry t;
        t.prec = parse_table_token(f[1]);
        t.threads = parse_int<int>(f[2], "threads");
        if (f[3] != "none") t.n_star = parse_int<std::size_t>(f[3], "threshold");
        table.thresholds.push_back(t);
      } else if (f[0] == "gap") {
        if (f.size() < 4) throw FormatError("gap line needs at least 4 fields");
        GridGap g;
        g.prec = parse_table_token(f[1]);
        g.n = parse_int<std::size_t>(f[2], "n");
        g.threads = parse_int<int>(f[3], "threads");
        // Reason is everything after the fourth field, verbatim.
        std::size_t pos = 0;
        for (int k = 0; k < 4; ++k) {
          pos = line.find_first_not_of(' ', pos);
          pos = line.find(' ', pos);
        }
        g.reason = pos == std::string::npos ? std::string() : line.substr(pos + 1);
        table.gaps.push_back(g);
      } else if (f[0].find(',') != std::string::npos) {
        table.rows.push_back(parse_row(f));
      } else {
        throw FormatError("unrecognized line");
      }
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

void save_table(const TuningTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_table(out, table);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

TuningTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_table(in);
}

}  // namespace mpmm
