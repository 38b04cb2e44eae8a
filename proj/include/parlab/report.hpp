#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "parlab/harness.hpp"
#include "parlab/simmodel.hpp"

namespace parlab {

inline constexpr std::string_view kSummaryHeader =
    "kernel,n,p,t1_seconds,tp_seconds,speedup,efficiency,valid";
inline constexpr std::string_view kRawHeader = "kernel,n,p,rep,wall_seconds";
inline constexpr int kResultFormatVersion = 1;

/// One line of the summary CSV.
struct SummaryRow {
  std::string kernel;
  std::uint64_t n = 1;
  std::uint32_t p = 1;
  double t1_seconds = 0.0;
  double tp_seconds = 0.0;
  double speedup = 0.0;
  double efficiency = 0.0;
  bool valid = true;
};

/// One line of the raw-timings CSV.
struct RawRow {
  std::string kernel;
  std::uint64_t n = 1;
  std::uint32_t p = 1;
  std::uint32_t rep = 0;
  double wall_seconds = 0.0;
};

SummaryRow to_summary_row(const BenchRecord& record);
std::vector<SummaryRow> to_summary_rows(std::span<const BenchRecord> records);
std::vector<RawRow> to_raw_rows(std::span<const BenchRecord> records);

/// Shortest decimal text that parses back to the same double, with a
/// trailing ".0" on integral values.
std::string format_number(double value);

/// 17 significant digits.
std::string format_exact(double value);

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);
void write_raw_csv(std::ostream& out, std::span<const RawRow> rows);
std::vector<SummaryRow> read_summary_csv(std::istream& in);
std::vector<RawRow> read_raw_csv(std::istream& in);

void write_csv(std::span<const SummaryRow> rows, const std::filesystem::path& path);
void write_csv(std::span<const RawRow> rows, const std::filesystem::path& path);
std::vector<SummaryRow> read_csv(const std::filesystem::path& path);
std::vector<RawRow> read_raw_csv(const std::filesystem::path& path);

/// Path of the raw-timings file that accompanies a summary file:
/// results.csv -> results_raw.csv.
std::filesystem::path raw_path_for(const std::filesystem::path& summary_path);

enum class PlotAxis { n, p };

/// Text plot data for records of a single kernel: whitespace-separated
/// (x, speedup) columns, one block per series, blocks separated by two blank
/// lines. With x = p there is one series per n; with x = n one per p. An
/// "identity" series y = x over the same x values always comes last.
std::string emit_plot_data(std::span<const SummaryRow> rows, PlotAxis axis);

/// Character-grid rendering of the same series.
std::string emit_ascii_plot(std::span<const SummaryRow> rows, PlotAxis axis,
                            std::size_t width = 60, std::size_t height = 20);

/// ResultFile JSON: {"format_version": 1, "host_descriptor": ..., "kind":
/// "bench"|"sim", "records": [...]}.
std::string to_result_json(std::span<const SummaryRow> rows, std::string_view host);
struct SimRun {
  SimConfig config;
  SimResult result;
};
std::string to_result_json(std::span<const SimRun> runs, std::string_view host);

inline constexpr std::string_view kSimHeader =
    "p,stages,mode,dist,critical_len,trials,seed,mean_completion,total_work_mean,speedup,"
    "efficiency,per_stage_mean";
void write_sim_csv(std::ostream& out, std::span<const SimRun> runs);

struct ResultFile {
  int format_version = kResultFormatVersion;
  std::string host_descriptor;
  std::vector<SummaryRow> records;
};

/// Parses a bench ResultFile; rejects any format_version other than 1.
ResultFile parse_result_json(std::string_view text);

}  // namespace parlab
