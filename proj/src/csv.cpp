#include "pinch/csv.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pinch {

namespace {

std::string g9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

std::string format_csv(std::span<const SweepRow> rows) {
  const bool with_stderr =
      std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.layouts > 1; });
  std::string out(kCsvHeader);
  if (with_stderr) out += ",latency_stderr_s,sum_rate_stderr_bps";
  out += '\n';
  for (const SweepRow& r : rows) {
    out += g9(r.sweep_value);
    out += ',';
    out += to_string(r.scheme);
    out += ',' + g9(r.avg_latency_s);
    out += ',' + g9(r.avg_sum_rate_bps);
    out += ',' + std::to_string(r.n_states);
    out += ',' + std::to_string(r.n_infeasible);
    out += ',' + std::to_string(r.seed);
    out += ',' + g9(r.wall_time_s);
    if (with_stderr) {
      out += ',' + g9(r.latency_stderr_s);
      out += ',' + g9(r.sum_rate_stderr_bps);
    }
    out += '\n';
  }
  return out;
}

void write_csv(std::span<const SweepRow> rows, const std::filesystem::path& path) {
  if (rows.empty()) throw std::invalid_argument("write_csv: no rows");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_csv(rows);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<SweepRow> parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind(kCsvHeader, 0) != 0) {
    throw std::invalid_argument("CSV header mismatch");
  }
  const bool with_stderr = line.size() > kCsvHeader.size();
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> c = split(line);
    if (c.size() != (with_stderr ? 10u : 8u)) throw std::invalid_argument("CSV row has wrong width");
    SweepRow r;
    r.sweep_value = std::stod(c[0]);
    r.scheme = parse_scheme(c[1]);
    r.avg_latency_s = std::stod(c[2]);
    r.avg_sum_rate_bps = std::stod(c[3]);
    r.n_states = std::stoull(c[4]);
    r.n_infeasible = std::stoull(c[5]);
    r.seed = std::stoull(c[6]);
    r.wall_time_s = std::stod(c[7]);
    if (with_stderr) {
      r.latency_stderr_s = std::stod(c[8]);
      r.sum_rate_stderr_bps = std::stod(c[9]);
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace pinch
