#include "mpmm/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>

namespace mpmm {

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// CPU names can contain commas.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string kind_name(const PrecisionSpec& p) {
  switch (p.kind) {
    case PrecisionKind::DD: return "dd";
    case PrecisionKind::QD: return "qd";
    case PrecisionKind::AP: return "ap";
  }
  return "?";
}

}  // namespace

HostInfo parse_host(const std::string& host) {
  HostInfo info;
  const auto semi = host.rfind(";hw_threads=");
  if (!host.starts_with("cpu=") || semi == std::string::npos) {
    info.cpu = host;
    return info;
  }
  info.cpu = host.substr(4, semi - 4);
  try {
    info.hw_threads = static_cast<unsigned>(std::stoul(host.substr(semi + 12)));
  } catch (const std::exception&) {
    info.hw_threads = 0;
  }
  return info;
}

void write_csv(std::ostream& out, const TuningTable& table) {
  TuningTable sorted = table;
  sorted.sort_rows();
  const HostInfo host = parse_host(table.host);
  out << kCsvHeader << '\n';
  for (const auto& r : sorted.rows) {
    out << kind_name(r.prec) << ',' << r.prec.bits << ',' << r.n << ',' << r.threads << ',' << r.best_n_min << ','
        << g17(r.block_time_s) << ',' << g17(r.prediction_time_s) << ',' << g17(r.predicted_s) << ','
        << g17(r.rel_diff) << ',' << (r.simple_time_s ? g17(*r.simple_time_s) : std::string()) << ','
        << g17(r.strassen_time_s) << ',' << to_string(r.winner) << ',' << csv_field(host.cpu) << ','
        << host.hw_threads << '\n';
  }
}

std::vector<WinnersGrid> build_winners_grid(const TuningTable& table) {
  std::map<int, std::pair<std::set<PrecisionSpec>, std::set<std::size_t>>> axes;
  for (const auto& r : table.rows) {
    axes[r.threads].first.insert(r.prec);
    axes[r.threads].second.insert(r.n);
  }
  for (const auto& g : table.gaps) {
    axes[g.threads].first.insert(g.prec);
    axes[g.threads].second.insert(g.n);
  }

  std::vector<WinnersGrid> grids;
  for (const auto& [threads, ax] : axes) {
    WinnersGrid grid;
    grid.threads = threads;
    grid.precisions.assign(ax.first.begin(), ax.first.end());
    grid.dims.assign(ax.second.begin(), ax.second.end());
    grid.cells.assign(grid.precisions.size(), std::vector<std::string>(grid.dims.size(), "-"));
    auto index = [](const auto& v, const auto& x) {
      return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
    };
    for (const auto& g : table.gaps) {
      if (g.threads == threads) grid.cells[index(grid.precisions, g.prec)][index(grid.dims, g.n)] = "gap";
    }
    for (const auto& r : table.rows) {
      if (r.threads == threads) grid.cells[index(grid.precisions, r.prec)][index(grid.dims, r.n)] = to_string(r.winner);
    }
    grids.push_back(std::move(grid));
  }
  return grids;
}

void write_winners(std::ostream& out, const TuningTable& table) {
  out << "# host " << (table.host.empty() ? "unknown" : table.host) << '\n';
  bool first = true;
  for (const auto& grid : build_winners_grid(table)) {
    if (!first) out << '\n';
    first = false;
    out << "threads " << grid.threads << '\n';

    std::vector<std::string> head{"prec \\ n"};
    for (auto n : grid.dims) head.push_back(std::to_string(n));
    std::vector<std::vector<std::string>> lines{head};
    for (std::size_t p = 0; p < grid.precisions.size(); ++p) {
      std::vector<std::string> line{to_string(grid.precisions[p])};
      line.insert(line.end(), grid.cells[p].begin(), grid.cells[p].end());
      lines.push_back(std::move(line));
    }

    std::vector<std::size_t> width(head.size(), 0);
    for (const auto& line : lines) {
      for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
    }
    for (const auto& line : lines) {
      std::string text;
      for (std::size_t c = 0; c < line.size(); ++c) {
        if (c) text += "  ";
        text += line[c];
        if (c + 1 < line.size()) text.append(width[c] - line[c].size(), ' ');
      }
      out << text << '\n';
    }
  }
}

}  // namespace mpmm
