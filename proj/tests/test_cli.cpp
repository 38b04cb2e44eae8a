#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "parlab/cli.hpp"
#include "parlab/metrics.hpp"
#include "parlab/report.hpp"

using namespace parlab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("parlab_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("count lists") {
  CHECK(parse_count_list("1,2,4") == std::vector<std::uint64_t>{1, 2, 4});
  CHECK(parse_count_list("1..8") == std::vector<std::uint64_t>{1, 2, 4, 8});
  CHECK(parse_count_list("3..20") == std::vector<std::uint64_t>{4, 8, 16});
  CHECK(parse_count_list("2^10") == std::vector<std::uint64_t>{1024});
  CHECK(parse_count_list("2^2..2^4") == std::vector<std::uint64_t>{4, 8, 16});
  CHECK_THROWS_AS(parse_count_list(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_count_list("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_count_list("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_count_list("8..2"), std::invalid_argument);
}

TEST_CASE("laws subcommands print the closed forms") {
  const auto amdahl = run({"laws", "amdahl", "--pfrac", "0.9", "--component-speedup", "4"});
  CHECK(amdahl.code == kExitOk);
  CHECK(std::abs(std::stod(amdahl.out) - 40.0 / 13.0) <= 1e-12);

  const auto gustafson = run({"laws", "gustafson", "--serial-frac", "0.1", "--procs", "16"});
  CHECK(gustafson.code == kExitOk);
  CHECK(std::stod(gustafson.out) == doctest::Approx(14.5).epsilon(1e-15));

  CHECK(run({"laws", "amdahl", "--pfrac", "1.5", "--component-speedup", "4"}).code == kExitUsage);
  CHECK(run({"laws", "amdahl", "--pfrac", "0.5"}).code == kExitUsage);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"laws", "amdahl", "--bogus", "1"}).code == kExitUsage);
  CHECK(run({"bench", "--kernel", "quicksort", "--n", "16", "--procs", "1"}).code == kExitUsage);
  CHECK(run({"sim", "--dist", "gauss:1"}).code == kExitUsage);
  CHECK(run({"iso", "--efficiency", "0.5", "--tc", "1", "--overhead", "1,2"}).code == kExitUsage);
  const auto help = run({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("bench") != std::string::npos);
}

TEST_CASE("fit recovers the serial fraction from a noiseless file") {
  const auto dir = scratch_dir("fit");
  std::vector<SummaryRow> rows;
  for (std::uint32_t p : {1, 2, 4, 8, 16}) {
    const double s = predicted_speedup({1.0, 9.0}, p);
    rows.push_back({"synthetic", 1000, p, 10.0, 10.0 / s, s, s / p, true});
  }
  write_csv(rows, dir / "bench.csv");

  const auto res = run({"fit", "--input", (dir / "bench.csv").string()});
  REQUIRE(res.code == kExitOk);
  const auto pos = res.out.find("serial_fraction=");
  REQUIRE(pos != std::string::npos);
  CHECK(std::abs(std::stod(res.out.substr(pos + 16)) - 0.1) <= 1e-9);
  CHECK(res.out.find("clamped=0") != std::string::npos);
  CHECK(res.out.find("points=4") != std::string::npos);

  const auto single = run({"fit", "--input", (dir / "bench.csv").string(), "--single-point"});
  CHECK(single.code == kExitOk);
  std::size_t lines = 0;
  for (char c : single.out) lines += c == '\n';
  CHECK(lines == 4);

  // The same records as JSON.
  std::ofstream(dir / "bench.json") << to_result_json(rows, "test");
  const auto from_json = run({"fit", "--input", (dir / "bench.json").string()});
  CHECK(from_json.code == kExitOk);
  CHECK(from_json.out == res.out);

  CHECK(run({"fit", "--input", (dir / "missing.csv").string()}).code == kExitRuntime);
  fs::remove_all(dir);
}

TEST_CASE("fit without p >= 2 rows is a usage error") {
  const auto dir = scratch_dir("fit_p1");
  const std::vector<SummaryRow> rows{{"k", 10, 1, 1.0, 1.0, 1.0, 1.0, true}};
  write_csv(rows, dir / "bench.csv");
  const auto res = run({"fit", "--input", (dir / "bench.csv").string()});
  CHECK(res.code == kExitUsage);
  CHECK_FALSE(res.err.empty());
  fs::remove_all(dir);
}

TEST_CASE("iso prints a p,n table") {
  const auto res = run({"iso", "--efficiency", "0.5", "--tc", "1", "--overhead", "0,1,0,0",
                        "--procs", "1..8"});
  CHECK(res.code == kExitOk);
  CHECK(res.out == "p,n\n1,1.0\n2,2.0\n4,4.0\n8,8.0\n");
  const auto degenerate =
      run({"iso", "--efficiency", "0.5", "--tc", "1", "--overhead", "0,0,0,0"});
  CHECK(degenerate.code == kExitUsage);
}

TEST_CASE("deterministic subcommands are byte-identical across runs") {
  const std::vector<std::vector<std::string>> commands{
      {"laws", "amdahl", "--pfrac", "0.37", "--component-speedup", "11"},
      {"laws", "gustafson", "--serial-frac", "0.2", "--procs", "64"},
      {"iso", "--efficiency", "0.7", "--tc", "1e-9", "--overhead", "1,2,3,4"},
      {"sim", "--procs", "1,2,4", "--dist", "exp:1", "--stages", "50", "--trials", "20",
       "--mode", "async", "--critical", "0.1", "--format", "csv"},
      {"sim", "--procs", "8", "--dist", "uni:0.5,1.5", "--format", "json"},
  };
  for (const auto& cmd : commands) {
    const auto a = run(cmd);
    const auto b = run(cmd);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("bench writes summary and raw files, report leaves them untouched") {
  const auto dir = scratch_dir("bench");
  const auto csv = dir / "bench.csv";
  const auto res = run({"bench", "--kernel", "vecmax,linsolve", "--n", "64", "--procs", "1,2",
                        "--reps", "2", "--warmup", "0", "--out", csv.string()});
  REQUIRE(res.code == kExitOk);
  CHECK(res.out.rfind(std::string(kSummaryHeader), 0) == 0);
  const auto rows = read_csv(csv);
  CHECK(rows.size() == 4);
  CHECK(read_raw_csv(raw_path_for(csv)).size() == 8);

  const auto before = slurp(csv);
  const auto before_time = fs::last_write_time(csv);
  for (const char* format : {"csv", "json", "ascii", "plot"}) {
    const auto r = run({"report", "--input", csv.string(), "--format", format});
    CHECK(r.code == kExitOk);
    CHECK_FALSE(r.out.empty());
  }
  CHECK(slurp(csv) == before);
  CHECK(fs::last_write_time(csv) == before_time);

  const auto echoed = run({"report", "--input", csv.string(), "--format", "csv"});
  CHECK(echoed.out == before);
  fs::remove_all(dir);
}

TEST_CASE("bench honours the output directory variable") {
  const auto dir = scratch_dir("envdir");
  ::setenv(kOutputDirEnv, dir.c_str(), 1);
  const auto res =
      run({"bench", "--kernel", "vecmax", "--n", "32", "--procs", "1", "--reps", "1"});
  ::unsetenv(kOutputDirEnv);
  CHECK(res.code == kExitOk);
  CHECK(fs::exists(dir / "bench.csv"));
  CHECK(fs::exists(dir / "bench_raw.csv"));
  fs::remove_all(dir);
}

TEST_CASE("report rejects malformed input") {
  const auto dir = scratch_dir("bad");
  std::ofstream(dir / "bad.csv") << "kernel,n\nvecmax,4\n";
  CHECK(run({"report", "--input", (dir / "bad.csv").string()}).code == kExitRuntime);
  std::ofstream(dir / "bad.json") << R"({"format_version": 9, "records": []})";
  CHECK(run({"report", "--input", (dir / "bad.json").string()}).code == kExitRuntime);
  fs::remove_all(dir);
}
