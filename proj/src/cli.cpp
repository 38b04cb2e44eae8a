#include "parlab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "parlab/errors.hpp"
#include "parlab/harness.hpp"
#include "parlab/laws.hpp"
#include "parlab/report.hpp"
#include "parlab/simmodel.hpp"

namespace parlab {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

std::uint64_t parse_count(std::string_view item) {
  auto to_u64 = [&](std::string_view digits) {
    std::uint64_t value = 0;
    const auto* end = digits.data() + digits.size();
    auto [ptr, ec] = std::from_chars(digits.data(), end, value);
    if (digits.empty() || ec != std::errc() || ptr != end) {
      throw DomainError("not a count: '" + std::string(item) + "'");
    }
    return value;
  };
  if (item.starts_with("2^")) {
    const auto exponent = to_u64(item.substr(2));
    if (exponent > 63) throw DomainError("exponent too large in '" + std::string(item) + "'");
    return std::uint64_t{1} << exponent;
  }
  return to_u64(item);
}

double parse_real(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw DomainError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

template <typename Int>
std::vector<Int> narrow_counts(const std::vector<std::uint64_t>& values, std::string_view what) {
  std::vector<Int> out;
  for (auto v : values) {
    if (v < 1 || v > std::numeric_limits<Int>::max()) {
      throw DomainError(std::string(what) + " value " + std::to_string(v) + " out of range");
    }
    out.push_back(static_cast<Int>(v));
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Summary rows from either a summary CSV or a bench ResultFile JSON.
ResultFile load_results(const std::string& path) {
  const std::string text = slurp(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    return parse_result_json(text);
  }
  std::istringstream in(text);
  ResultFile file;
  file.host_descriptor = "unknown";
  file.records = read_summary_csv(in);
  return file;
}

// Groups rows by kernel, keeping first-appearance order.
std::vector<std::vector<SummaryRow>> by_kernel(const std::vector<SummaryRow>& rows) {
  std::vector<std::vector<SummaryRow>> groups;
  std::map<std::string, std::size_t> index;
  for (const auto& r : rows) {
    auto [it, inserted] = index.try_emplace(r.kernel, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(r);
  }
  return groups;
}

std::string default_bench_path() {
  const char* dir = std::getenv(kOutputDirEnv);
  std::filesystem::path base = dir && *dir ? std::filesystem::path(dir) : ".";
  return (base / "bench.csv").string();
}

struct BenchArgs {
  std::string kernels = "vecmax";
  std::string sizes = "2^16,2^18,2^20";
  std::string procs = "1,2,4";
  std::uint32_t reps = 10;
  std::uint32_t warmup = 3;
  std::uint64_t seed = 42;
  std::string baseline = "seq";
  std::string out_path;
};

struct AmdahlArgs {
  double pfrac = 0.0;
  double component_speedup = 1.0;
};

struct GustafsonArgs {
  double serial_frac = 0.0;
  std::uint64_t procs = 1;
};

struct FitArgs {
  std::string input;
  bool single_point = false;
};

struct IsoArgs {
  double efficiency = 0.5;
  double tc = 1.0;
  std::string overhead = "0,1,0,0";
  std::string procs = "1..1024";
};

struct SimArgs {
  std::string procs = "1";
  std::uint64_t stages = 100;
  std::string dist = "exp:1";
  double critical = 0.0;
  std::string mode = "sync";
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  std::string format = "json";
};

struct ReportArgs {
  std::string input;
  std::string format = "ascii";
  std::string axis = "p";
};

int run_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchPlan plan;
  for (auto k : split(a.kernels, ',')) {
    parse_kernel_id(k);
    plan.kernel_ids.emplace_back(k);
  }
  for (auto n : narrow_counts<std::uint64_t>(parse_count_list(a.sizes), "--n")) {
    plan.sizes.push_back(static_cast<std::size_t>(n));
  }
  plan.proc_counts = narrow_counts<std::uint32_t>(parse_count_list(a.procs), "--procs");
  plan.reps = a.reps;
  plan.warmup = a.warmup;
  plan.seed = a.seed;
  if (a.baseline == "seq") {
    plan.baseline_policy = BaselinePolicy::sequential_algorithm;
  } else if (a.baseline == "par1") {
    plan.baseline_policy = BaselinePolicy::parallel_at_p1;
  } else {
    throw DomainError("--baseline must be seq or par1");
  }
  plan.validate();

  const auto records = run_plan(plan);
  const auto rows = to_summary_rows(records);
  const std::string path = a.out_path.empty() ? default_bench_path() : a.out_path;
  write_csv(std::span<const SummaryRow>(rows), path);
  const auto raw_rows = to_raw_rows(records);
  write_csv(std::span<const RawRow>(raw_rows), raw_path_for(path));

  write_summary_csv(out, rows);
  bool all_valid = true;
  for (const auto& r : records) {
    if (!r.valid) {
      all_valid = false;
      err << "invalid cell " << r.kernel_id << " n=" << r.n << " p=" << r.p << ": " << r.error
          << '\n';
    }
  }
  err << "wrote " << path << " and " << raw_path_for(path).string() << '\n';
  return all_valid ? kExitOk : kExitRuntime;
}

int run_fit(const FitArgs& a, std::ostream& out) {
  const auto file = load_results(a.input);
  if (a.single_point) {
    bool any = false;
    for (const auto& r : file.records) {
      if (!r.valid || r.p < 2) continue;
      const WorkerSpeedup pt{r.p, r.speedup};
      const auto fit = fit_serial_fraction(std::span(&pt, 1));
      out << "kernel=" << r.kernel << " n=" << r.n << " p=" << r.p
          << " speedup=" << format_number(r.speedup)
          << " serial_fraction=" << format_number(fit.f_seq)
          << " clamped=" << (fit.clamped ? 1 : 0) << '\n';
      any = true;
    }
    if (!any) throw InsufficientDataError("no valid rows with p >= 2 in " + a.input);
    return kExitOk;
  }
  // One fit per (kernel, n) series, in first-appearance order.
  std::vector<std::pair<std::string, std::uint64_t>> order;
  std::map<std::pair<std::string, std::uint64_t>, std::vector<WorkerSpeedup>> groups;
  for (const auto& r : file.records) {
    if (!r.valid) continue;
    auto key = std::make_pair(r.kernel, r.n);
    if (!groups.contains(key)) order.push_back(key);
    groups[key].push_back({r.p, r.speedup});
  }
  if (order.empty()) throw InsufficientDataError("no valid rows in " + a.input);
  for (const auto& key : order) {
    const auto fit = fit_serial_fraction(groups[key]);
    out << "kernel=" << key.first << " n=" << key.second
        << " serial_fraction=" << format_number(fit.f_seq)
        << " unclamped=" << format_number(fit.unclamped) << " clamped=" << (fit.clamped ? 1 : 0)
        << " points=" << fit.points_used << '\n';
  }
  return kExitOk;
}

int run_iso(const IsoArgs& a, std::ostream& out) {
  const auto coeffs = split(a.overhead, ',');
  if (coeffs.size() != 4) {
    throw DomainError("--overhead needs four coefficients c0,c1,c1log,c2");
  }
  OverheadModel model{parse_real(coeffs[0], "c0"), parse_real(coeffs[1], "c1"),
                      parse_real(coeffs[2], "c1log"), parse_real(coeffs[3], "c2")};
  const auto procs = parse_count_list(a.procs);
  const auto curve = iso_curve(a.efficiency, a.tc, model, procs);
  out << "p,n\n";
  for (const auto& pt : curve) {
    out << pt.p << ',' << format_number(pt.n) << '\n';
  }
  return kExitOk;
}

int run_sim(const SimArgs& a, std::ostream& out) {
  SimConfig base;
  base.stages = a.stages;
  base.dist = parse_service_dist(a.dist);
  base.critical_len = a.critical;
  base.mode = parse_sim_mode(a.mode);
  base.trials = a.trials;
  base.seed = a.seed;
  const auto procs = narrow_counts<std::uint32_t>(parse_count_list(a.procs), "--procs");
  if (a.format != "json" && a.format != "csv") {
    throw DomainError("--format must be json or csv");
  }

  std::vector<SimRun> runs;
  for (auto p : procs) {
    SimConfig cfg = base;
    cfg.p = p;
    // A sweep over several p uses the same per-p substreams as
    // predicted_speedup_curve; a single p uses the seed as given.
    if (procs.size() > 1) cfg.seed = curve_seed(base.seed, p);
    runs.push_back({cfg, simulate(cfg)});
  }
  if (a.format == "csv") {
    write_sim_csv(out, runs);
  } else {
    out << to_result_json(runs, host_descriptor());
  }
  return kExitOk;
}

void write_table(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << std::left << std::setw(14) << "kernel" << std::right << std::setw(10) << "n"
      << std::setw(5) << "p" << std::setw(14) << "t1_s" << std::setw(14) << "tp_s"
      << std::setw(10) << "speedup" << std::setw(10) << "eff" << "  valid\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(14) << r.kernel << std::right << std::setw(10) << r.n
        << std::setw(5) << r.p << std::setw(14) << std::setprecision(6) << r.t1_seconds
        << std::setw(14) << r.tp_seconds << std::setw(10) << std::setprecision(4) << r.speedup
        << std::setw(10) << r.efficiency << "  " << (r.valid ? "yes" : "no") << '\n';
  }
}

int run_report(const ReportArgs& a, std::ostream& out) {
  if (a.axis != "p" && a.axis != "n") throw DomainError("--axis must be p or n");
  const PlotAxis axis = a.axis == "p" ? PlotAxis::p : PlotAxis::n;
  const auto file = load_results(a.input);
  if (a.format == "csv") {
    write_summary_csv(out, file.records);
  } else if (a.format == "json") {
    out << to_result_json(file.records, file.host_descriptor);
  } else if (a.format == "ascii") {
    write_table(out, file.records);
    for (const auto& group : by_kernel(file.records)) {
      out << '\n' << emit_ascii_plot(group, axis);
    }
  } else if (a.format == "plot") {
    bool first = true;
    for (const auto& group : by_kernel(file.records)) {
      if (!first) out << "\n\n";
      first = false;
      out << emit_plot_data(group, axis);
    }
  } else {
    throw DomainError("--format must be csv, json, ascii or plot");
  }
  return kExitOk;
}

}  // namespace

std::vector<std::uint64_t> parse_count_list(std::string_view text) {
  std::vector<std::uint64_t> values;
  for (auto item : split(text, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      values.push_back(parse_count(item));
      continue;
    }
    const auto lo = parse_count(item.substr(0, dots));
    const auto hi = parse_count(item.substr(dots + 2));
    if (lo > hi) throw DomainError("empty range '" + std::string(item) + "'");
    for (std::uint64_t v = 1; v <= hi; v <<= 1) {
      if (v >= lo) values.push_back(v);
      if (v > (std::uint64_t{1} << 62)) break;
    }
  }
  if (values.empty()) throw DomainError("empty list '" + std::string(text) + "'");
  return values;
}

int cli_main(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"parlab: parallel speedup laboratory", "parlab"};
  app.require_subcommand(1);

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "time kernels over an (n, p) grid");
  bench->add_option("--kernel", bench_args.kernels,
                    "comma list of vecmax, newton_async, matrix_expr, linsolve");
  bench->add_option("--n", bench_args.sizes, "problem sizes, e.g. 1024,2^20 or 2^10..2^20");
  bench->add_option("--procs", bench_args.procs, "worker counts, e.g. 1,2,4 or 1..8");
  bench->add_option("--reps", bench_args.reps, "timed repetitions per cell")
      ->check(CLI::PositiveNumber);
  bench->add_option("--warmup", bench_args.warmup, "discarded leading runs");
  bench->add_option("--seed", bench_args.seed, "instance seed");
  bench->add_option("--baseline", bench_args.baseline, "seq or par1")
      ->check(CLI::IsMember({"seq", "par1"}));
  bench->add_option("--out", bench_args.out_path, "summary CSV path (raw times go next to it)");

  auto* laws = app.add_subcommand("laws", "evaluate Amdahl or Gustafson speedup");
  laws->require_subcommand(1);
  AmdahlArgs amdahl_args;
  auto* amdahl = laws->add_subcommand("amdahl", "1 / ((1 - P) + P / S)");
  amdahl->add_option("--pfrac", amdahl_args.pfrac, "parallelizable fraction P")->required();
  amdahl->add_option("--component-speedup", amdahl_args.component_speedup,
                     "speedup S of the parallel part")
      ->required();
  GustafsonArgs gustafson_args;
  auto* gustafson = laws->add_subcommand("gustafson", "p + (1 - p) f_seq");
  gustafson->add_option("--serial-frac", gustafson_args.serial_frac, "serial fraction")
      ->required();
  gustafson->add_option("--procs", gustafson_args.procs, "processor count")->required();

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "estimate the serial fraction from measured speedups");
  fit->add_option("--input", fit_args.input, "summary CSV or result JSON")->required();
  fit->add_flag("--single-point", fit_args.single_point,
                "one Karp-Flatt estimate per row instead of a least-squares fit per series");

  IsoArgs iso_args;
  auto* iso = app.add_subcommand("iso", "isoefficiency problem sizes");
  iso->add_option("--efficiency", iso_args.efficiency, "target efficiency in (0, 1)")
      ->required();
  iso->add_option("--tc", iso_args.tc, "seconds per unit of work")->required();
  iso->add_option("--overhead", iso_args.overhead, "c0,c1,c1log,c2")->required();
  iso->add_option("--procs", iso_args.procs, "a..b (powers of two) or a comma list");

  SimArgs sim_args;
  auto* sim = app.add_subcommand("sim", "simulate synchronized or asynchronous processes");
  sim->add_option("--procs", sim_args.procs, "process count or list");
  sim->add_option("--stages", sim_args.stages, "stages per process");
  sim->add_option("--dist", sim_args.dist, "det:t | uni:a,b | exp:m");
  sim->add_option("--critical", sim_args.critical, "critical section seconds per stage");
  sim->add_option("--mode", sim_args.mode, "sync or async")
      ->check(CLI::IsMember({"sync", "async"}));
  sim->add_option("--trials", sim_args.trials, "Monte Carlo trials");
  sim->add_option("--seed", sim_args.seed, "random seed");
  sim->add_option("--format", sim_args.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "render a result file");
  report->add_option("--input", report_args.input, "summary CSV or result JSON")->required();
  report->add_option("--format", report_args.format, "csv, json, ascii or plot")
      ->check(CLI::IsMember({"csv", "json", "ascii", "plot"}));
  report->add_option("--axis", report_args.axis, "x axis for plots: p or n")
      ->check(CLI::IsMember({"p", "n"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (bench->parsed()) return run_bench(bench_args, out, err);
    if (amdahl->parsed()) {
      out << format_number(amdahl_speedup({amdahl_args.pfrac, amdahl_args.component_speedup}))
          << '\n';
      return kExitOk;
    }
    if (gustafson->parsed()) {
      out << format_number(gustafson_speedup(gustafson_args.serial_frac, gustafson_args.procs))
          << '\n';
      return kExitOk;
    }
    if (fit->parsed()) return run_fit(fit_args, out);
    if (iso->parsed()) return run_iso(iso_args, out);
    if (sim->parsed()) return run_sim(sim_args, out);
    if (report->parsed()) return run_report(report_args, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace parlab
