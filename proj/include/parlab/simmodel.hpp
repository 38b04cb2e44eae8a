#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace parlab {

struct Deterministic {
  double t = 1.0;
};
struct Uniform {
  double a = 0.0;
  double b = 1.0;
};
struct Exponential {
  double mean = 1.0;
};

/// Per-stage service time distribution, seconds.
using ServiceDist = std::variant<Deterministic, Uniform, Exponential>;

/// Parses "det:t", "uni:a,b" or "exp:m".
ServiceDist parse_service_dist(std::string_view text);
std::string to_string(const ServiceDist& dist);

/// Draws one service time from a uniform variate u in [0, 1).
double sample_service(const ServiceDist& dist, double u);

enum class SimMode { synchronized, asynchronous };

std::string_view to_string(SimMode mode);
SimMode parse_sim_mode(std::string_view text);

struct SimConfig {
  std::uint32_t p = 1;
  std::uint64_t stages = 1;
  ServiceDist dist = Deterministic{1.0};
  double critical_len = 0.0;  // exclusive-access seconds at the end of every stage
  SimMode mode = SimMode::synchronized;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SimResult {
  double mean_completion = 0.0;
  std::vector<double> completion_samples;  // one per trial, in trial order
  double total_work_mean = 0.0;
  double speedup_estimate = 0.0;  // mean over trials of total work / completion
  double efficiency_estimate = 0.0;
  double per_stage_mean = 0.0;  // mean completion / stages

  friend bool operator==(const SimResult&, const SimResult&) = default;
};

/// Service time of (trial, process, stage). Depends only on the key and the
/// seed, never on the mode or on the order of evaluation.
double service_draw(const SimConfig& config, std::uint64_t trial, std::uint32_t process,
                    std::uint64_t stage);

/// Monte Carlo run of the process model.
///
/// Synchronized: a barrier closes every stage, so a stage lasts as long as
/// its slowest process and completion is the sum of per-stage maxima.
///
/// Asynchronous: each process runs its stages back to back. The critical
/// part of a stage needs a single exclusive token, granted first come first
/// served by request time (ties to the lower process index). Completion is
/// the latest process finish time.
SimResult simulate(const SimConfig& config);

/// mean * H_p, the expected maximum of p iid exponentials.
double expected_max_exponential(std::uint32_t p, double mean);

/// Seed used for worker count p inside predicted_speedup_curve.
std::uint64_t curve_seed(std::uint64_t base_seed, std::uint32_t p);

struct CurvePoint {
  std::uint32_t p = 1;
  double speedup = 0.0;
};

/// simulate() at each p of p_list, each with its own substream seed.
std::vector<CurvePoint> predicted_speedup_curve(const SimConfig& config_template,
                                                std::span<const std::uint32_t> p_list);

}  // namespace parlab
