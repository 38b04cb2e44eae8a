#include "parlab/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "parlab/errors.hpp"

namespace parlab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Number formatting

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string text(buf, ptr);
  if (text.find_first_not_of("-0123456789") == std::string::npos) {
    text += ".0";
  }
  return text;
}

std::string format_exact(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

// ---------------------------------------------------------------------------
// Record conversion

SummaryRow to_summary_row(const BenchRecord& record) {
  return {record.kernel_id, record.n,           record.p,          record.baseline_t_median,
          record.t_median,  record.speedup,     record.efficiency, record.valid};
}

std::vector<SummaryRow> to_summary_rows(std::span<const BenchRecord> records) {
  std::vector<SummaryRow> rows;
  rows.reserve(records.size());
  for (const auto& r : records) {
    rows.push_back(to_summary_row(r));
  }
  return rows;
}

std::vector<RawRow> to_raw_rows(std::span<const BenchRecord> records) {
  std::vector<RawRow> rows;
  for (const auto& r : records) {
    for (std::size_t rep = 0; rep < r.raw_times.size(); ++rep) {
      rows.push_back({r.kernel_id, r.n, r.p, static_cast<std::uint32_t>(rep), r.raw_times[rep]});
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

void check_kernel_name(std::string_view name) {
  if (name.empty() || name.find_first_of(",\n\r\"") != std::string_view::npos) {
    throw DomainError("kernel name '" + std::string(name) +
                      "' is empty or contains a CSV delimiter");
  }
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

template <typename Int>
Int parse_int_field(std::string_view text, std::size_t line, std::string_view name) {
  Int value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(line, "field '" + std::string(name) + "' is not an unsigned integer: '" +
                               std::string(text) + "'");
  }
  return value;
}

double parse_double_field(std::string_view text, std::size_t line, std::string_view name) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(line, "field '" + std::string(name) + "' is not a number: '" +
                               std::string(text) + "'");
  }
  return value;
}

// Reads lines, checks the header, and hands each data line with its 1-based
// line number to `row`.
template <typename OnRow>
void read_lines(std::istream& in, std::string_view header, OnRow&& row) {
  std::string line;
  if (!std::getline(in, line)) {
    throw FormatError("missing header line; expected '" + std::string(header) + "'");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) {
    throw FormatError("unexpected header '" + line + "'; expected '" + std::string(header) + "'");
  }
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    row(std::string_view(line), number);
  }
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  return in;
}

}  // namespace

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    check_kernel_name(r.kernel);
    out << r.kernel << ',' << r.n << ',' << r.p << ',' << format_exact(r.t1_seconds) << ','
        << format_exact(r.tp_seconds) << ',' << format_exact(r.speedup) << ','
        << format_exact(r.efficiency) << ',' << (r.valid ? 1 : 0) << '\n';
  }
}

void write_raw_csv(std::ostream& out, std::span<const RawRow> rows) {
  out << kRawHeader << '\n';
  for (const auto& r : rows) {
    check_kernel_name(r.kernel);
    out << r.kernel << ',' << r.n << ',' << r.p << ',' << r.rep << ','
        << format_exact(r.wall_seconds) << '\n';
  }
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  std::vector<SummaryRow> rows;
  read_lines(in, kSummaryHeader, [&](std::string_view line, std::size_t number) {
    const auto f = split_fields(line);
    if (f.size() != 8) {
      throw ParseError(number, "expected 8 fields, found " + std::to_string(f.size()));
    }
    SummaryRow r;
    r.kernel = std::string(f[0]);
    if (r.kernel.empty()) throw ParseError(number, "kernel must not be empty");
    r.n = parse_int_field<std::uint64_t>(f[1], number, "n");
    r.p = parse_int_field<std::uint32_t>(f[2], number, "p");
    r.t1_seconds = parse_double_field(f[3], number, "t1_seconds");
    r.tp_seconds = parse_double_field(f[4], number, "tp_seconds");
    r.speedup = parse_double_field(f[5], number, "speedup");
    r.efficiency = parse_double_field(f[6], number, "efficiency");
    if (f[7] != "0" && f[7] != "1") {
      throw ParseError(number, "field 'valid' must be 0 or 1");
    }
    r.valid = f[7] == "1";
    if (r.n < 1) throw ParseError(number, "invariant violated: n must be >= 1");
    if (r.p < 1) throw ParseError(number, "invariant violated: p must be >= 1");
    if (r.valid && !(r.t1_seconds > 0.0 && r.tp_seconds > 0.0)) {
      throw ParseError(number, "invariant violated: valid rows need positive times");
    }
    rows.push_back(std::move(r));
  });
  return rows;
}

std::vector<RawRow> read_raw_csv(std::istream& in) {
  std::vector<RawRow> rows;
  read_lines(in, kRawHeader, [&](std::string_view line, std::size_t number) {
    const auto f = split_fields(line);
    if (f.size() != 5) {
      throw ParseError(number, "expected 5 fields, found " + std::to_string(f.size()));
    }
    RawRow r;
    r.kernel = std::string(f[0]);
    if (r.kernel.empty()) throw ParseError(number, "kernel must not be empty");
    r.n = parse_int_field<std::uint64_t>(f[1], number, "n");
    r.p = parse_int_field<std::uint32_t>(f[2], number, "p");
    r.rep = parse_int_field<std::uint32_t>(f[3], number, "rep");
    r.wall_seconds = parse_double_field(f[4], number, "wall_seconds");
    if (r.n < 1) throw ParseError(number, "invariant violated: n must be >= 1");
    if (r.p < 1) throw ParseError(number, "invariant violated: p must be >= 1");
    rows.push_back(std::move(r));
  });
  return rows;
}

void write_csv(std::span<const SummaryRow> rows, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_summary_csv(out, rows);
  if (!out.flush()) throw IoError("write to '" + path.string() + "' failed");
}

void write_csv(std::span<const RawRow> rows, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_raw_csv(out, rows);
  if (!out.flush()) throw IoError("write to '" + path.string() + "' failed");
}

std::vector<SummaryRow> read_csv(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_summary_csv(in);
}

std::vector<RawRow> read_raw_csv(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_raw_csv(in);
}

std::filesystem::path raw_path_for(const std::filesystem::path& summary_path) {
  auto raw = summary_path;
  if (summary_path.extension() == ".csv") {
    raw.replace_filename(summary_path.stem().string() + "_raw.csv");
  } else {
    raw += "_raw.csv";
  }
  return raw;
}

// ---------------------------------------------------------------------------
// Plot data

namespace {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;  // sorted by x
};

std::vector<Series> build_series(std::span<const SummaryRow> rows, PlotAxis axis) {
  if (rows.empty()) {
    throw DomainError("no records to plot");
  }
  for (const auto& r : rows) {
    if (r.kernel != rows.front().kernel) {
      throw DomainError("plot records mix kernels '" + rows.front().kernel + "' and '" +
                        r.kernel + "'");
    }
  }
  std::map<std::uint64_t, std::vector<std::pair<double, double>>> grouped;
  std::set<double> xs;
  for (const auto& r : rows) {
    const double x = axis == PlotAxis::p ? r.p : static_cast<double>(r.n);
    xs.insert(x);
    if (!r.valid) continue;
    const std::uint64_t key = axis == PlotAxis::p ? r.n : r.p;
    grouped[key].emplace_back(x, r.speedup);
  }
  std::vector<Series> series;
  const char* key_name = axis == PlotAxis::p ? "n=" : "p=";
  for (auto& [key, points] : grouped) {
    std::stable_sort(points.begin(), points.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    series.push_back({key_name + std::to_string(key), std::move(points)});
  }
  Series identity{"identity", {}};
  for (double x : xs) {
    identity.points.emplace_back(x, x);
  }
  series.push_back(std::move(identity));
  return series;
}

}  // namespace

std::string emit_plot_data(std::span<const SummaryRow> rows, PlotAxis axis) {
  const auto series = build_series(rows, axis);
  std::ostringstream out;
  out << "# kernel=" << rows.front().kernel << " x=" << (axis == PlotAxis::p ? "p" : "n")
      << " y=speedup\n";
  bool first = true;
  for (const auto& s : series) {
    if (!first) out << "\n\n";
    first = false;
    out << "# series " << s.label << '\n';
    for (const auto& [x, y] : s.points) {
      out << format_number(x) << ' ' << format_number(y) << '\n';
    }
  }
  return out.str();
}

std::string emit_ascii_plot(std::span<const SummaryRow> rows, PlotAxis axis, std::size_t width,
                            std::size_t height) {
  if (width < 2 || height < 2) {
    throw DomainError("plot grid must be at least 2x2");
  }
  const auto series = build_series(rows, axis);
  const bool log_x = axis == PlotAxis::n;
  auto tx = [&](double x) { return log_x ? std::log2(x) : x; };

  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymax = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const bool is_identity = i + 1 == series.size();
    for (const auto& [x, y] : series[i].points) {
      xmin = std::min(xmin, tx(x));
      xmax = std::max(xmax, tx(x));
      // On the n axis y = x is far off-scale; it is clipped, not fitted.
      if (std::isfinite(y) && (!is_identity || axis == PlotAxis::p)) ymax = std::max(ymax, y);
    }
  }
  if (!(ymax > 0.0)) ymax = 1.0;
  const double xspan = xmax > xmin ? xmax - xmin : 1.0;

  std::vector<std::string> grid(height, std::string(width, ' '));
  static constexpr std::string_view kGlyphs = "123456789abcdefghijklmnopqrstuvwxyz";
  // Identity first so measured series draw over it.
  for (std::size_t k = series.size(); k-- > 0;) {
    const bool is_identity = k + 1 == series.size();
    const char glyph = is_identity ? '.' : kGlyphs[k % kGlyphs.size()];
    for (const auto& [x, y] : series[k].points) {
      if (!std::isfinite(y) || y > ymax || y < 0.0) continue;
      const auto col = static_cast<std::size_t>(
          std::lround((tx(x) - xmin) / xspan * static_cast<double>(width - 1)));
      const auto row = static_cast<std::size_t>(
          std::lround(y / ymax * static_cast<double>(height - 1)));
      grid[height - 1 - row][col] = glyph;
    }
  }

  std::ostringstream out;
  out << "speedup (max " << format_number(ymax) << ") vs " << (axis == PlotAxis::p ? "p" : "log2 n")
      << ", kernel " << rows.front().kernel << '\n';
  for (const auto& line : grid) {
    out << '|' << line << '\n';
  }
  out << '+' << std::string(width, '-') << '\n';
  out << ' ' << (log_x ? "2^" : "") << format_number(xmin) << " .. " << (log_x ? "2^" : "")
      << format_number(xmax) << '\n';
  for (std::size_t k = 0; k < series.size(); ++k) {
    const bool is_identity = k + 1 == series.size();
    out << "  " << (is_identity ? '.' : kGlyphs[k % kGlyphs.size()]) << ' ' << series[k].label
        << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// JSON result files

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

std::string to_result_json(std::span<const SummaryRow> rows, std::string_view host) {
  json records = json::array();
  for (const auto& r : rows) {
    records.push_back({{"kernel", r.kernel},
                       {"n", r.n},
                       {"p", r.p},
                       {"t1_seconds", number_or_null(r.t1_seconds)},
                       {"tp_seconds", number_or_null(r.tp_seconds)},
                       {"speedup", number_or_null(r.speedup)},
                       {"efficiency", number_or_null(r.efficiency)},
                       {"valid", r.valid}});
  }
  json doc = {{"format_version", kResultFormatVersion},
              {"host_descriptor", host},
              {"kind", "bench"},
              {"records", records}};
  return doc.dump(2) + "\n";
}

std::string to_result_json(std::span<const SimRun> runs, std::string_view host) {
  json records = json::array();
  for (const auto& [cfg, res] : runs) {
    records.push_back({{"p", cfg.p},
                       {"stages", cfg.stages},
                       {"mode", std::string(to_string(cfg.mode))},
                       {"dist", to_string(cfg.dist)},
                       {"critical_len", cfg.critical_len},
                       {"trials", cfg.trials},
                       {"seed", cfg.seed},
                       {"mean_completion", number_or_null(res.mean_completion)},
                       {"total_work_mean", number_or_null(res.total_work_mean)},
                       {"speedup_estimate", number_or_null(res.speedup_estimate)},
                       {"efficiency_estimate", number_or_null(res.efficiency_estimate)},
                       {"per_stage_mean", number_or_null(res.per_stage_mean)}});
  }
  json doc = {{"format_version", kResultFormatVersion},
              {"host_descriptor", host},
              {"kind", "sim"},
              {"records", records}};
  return doc.dump(2) + "\n";
}

void write_sim_csv(std::ostream& out, std::span<const SimRun> runs) {
  out << kSimHeader << '\n';
  for (const auto& [cfg, res] : runs) {
    out << cfg.p << ',' << cfg.stages << ',' << to_string(cfg.mode) << ",\""
        << to_string(cfg.dist) << "\"," << format_exact(cfg.critical_len) << ',' << cfg.trials
        << ',' << cfg.seed << ',' << format_exact(res.mean_completion) << ','
        << format_exact(res.total_work_mean) << ',' << format_exact(res.speedup_estimate) << ','
        << format_exact(res.efficiency_estimate) << ',' << format_exact(res.per_stage_mean)
        << '\n';
  }
}

ResultFile parse_result_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("result file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("format_version")) {
    throw FormatError("result file has no format_version");
  }
  if (!doc["format_version"].is_number_integer() ||
      doc["format_version"].get<int>() != kResultFormatVersion) {
    throw FormatError("unsupported result format_version " + doc["format_version"].dump() +
                      "; this build reads version " + std::to_string(kResultFormatVersion));
  }
  if (doc.value("kind", std::string("bench")) != "bench") {
    throw FormatError("result file holds '" + doc.value("kind", std::string()) +
                      "' records, not bench records");
  }
  ResultFile file;
  file.format_version = kResultFormatVersion;
  file.host_descriptor = doc.value("host_descriptor", std::string());
  try {
    for (const auto& r : doc.at("records")) {
      SummaryRow row;
      row.kernel = r.at("kernel").get<std::string>();
      row.n = r.at("n").get<std::uint64_t>();
      row.p = r.at("p").get<std::uint32_t>();
      row.t1_seconds = number_from(r.at("t1_seconds"));
      row.tp_seconds = number_from(r.at("tp_seconds"));
      row.speedup = number_from(r.at("speedup"));
      row.efficiency = number_from(r.at("efficiency"));
      row.valid = r.at("valid").get<bool>();
      if (row.n < 1 || row.p < 1) {
        throw FormatError("record violates n >= 1 and p >= 1");
      }
      file.records.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed record: ") + e.what());
  }
  return file;
}

}  // namespace parlab
