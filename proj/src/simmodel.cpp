#include "parlab/simmodel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <queue>
#include <string>

#include "parlab/errors.hpp"
#include "parlab/random.hpp"

namespace parlab {

namespace {

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw DomainError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::string shortest(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate_dist(const ServiceDist& dist) {
  std::visit(overloaded{
                 [](const Deterministic& d) {
                   if (!(d.t > 0.0) || !std::isfinite(d.t))
                     throw DomainError("deterministic time must be positive");
                 },
                 [](const Uniform& d) {
                   if (!(d.a >= 0.0) || !(d.a < d.b) || !std::isfinite(d.b))
                     throw DomainError("uniform bounds need 0 <= a < b");
                 },
                 [](const Exponential& d) {
                   if (!(d.mean > 0.0) || !std::isfinite(d.mean))
                     throw DomainError("exponential mean must be positive");
                 },
             },
             dist);
}

}  // namespace

ServiceDist parse_service_dist(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError("distribution must look like det:t, uni:a,b or exp:m");
  }
  const auto kind = text.substr(0, colon);
  const auto args = text.substr(colon + 1);
  ServiceDist dist;
  if (kind == "det") {
    dist = Deterministic{parse_double(args, "deterministic time")};
  } else if (kind == "exp") {
    dist = Exponential{parse_double(args, "exponential mean")};
  } else if (kind == "uni") {
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) {
      throw DomainError("uniform distribution needs uni:a,b");
    }
    dist = Uniform{parse_double(args.substr(0, comma), "uniform lower bound"),
                   parse_double(args.substr(comma + 1), "uniform upper bound")};
  } else {
    throw DomainError("unknown distribution kind '" + std::string(kind) + "'");
  }
  validate_dist(dist);
  return dist;
}

std::string to_string(const ServiceDist& dist) {
  return std::visit(overloaded{
                        [](const Deterministic& d) { return "det:" + shortest(d.t); },
                        [](const Uniform& d) {
                          return "uni:" + shortest(d.a) + "," + shortest(d.b);
                        },
                        [](const Exponential& d) { return "exp:" + shortest(d.mean); },
                    },
                    dist);
}

double sample_service(const ServiceDist& dist, double u) {
  return std::visit(overloaded{
                        [](const Deterministic& d) { return d.t; },
                        [u](const Uniform& d) { return d.a + (d.b - d.a) * u; },
                        // 1 - u lies in (0, 1], so the log is finite.
                        [u](const Exponential& d) { return -d.mean * std::log1p(-u); },
                    },
                    dist);
}

std::string_view to_string(SimMode mode) {
  return mode == SimMode::synchronized ? "sync" : "async";
}

SimMode parse_sim_mode(std::string_view text) {
  if (text == "sync") return SimMode::synchronized;
  if (text == "async") return SimMode::asynchronous;
  throw DomainError("mode must be sync or async, got '" + std::string(text) + "'");
}

void SimConfig::validate() const {
  if (p < 1) throw DomainError("process count must be >= 1");
  if (stages < 1) throw DomainError("stage count must be >= 1");
  if (trials < 1) throw DomainError("trial count must be >= 1");
  if (!(critical_len >= 0.0) || !std::isfinite(critical_len)) {
    throw DomainError("critical section length must be >= 0");
  }
  validate_dist(dist);
}

double service_draw(const SimConfig& config, std::uint64_t trial, std::uint32_t process,
                    std::uint64_t stage) {
  const auto bits = mix_key({config.seed, trial, process, stage});
  return sample_service(config.dist, to_unit(bits));
}

namespace {

struct TrialOutcome {
  double completion = 0.0;
  double total_work = 0.0;
};

TrialOutcome run_synchronized(const SimConfig& cfg, std::uint64_t trial) {
  TrialOutcome out;
  for (std::uint64_t s = 0; s < cfg.stages; ++s) {
    double slowest = 0.0;
    for (std::uint32_t proc = 0; proc < cfg.p; ++proc) {
      const double stage_time = service_draw(cfg, trial, proc, s) + cfg.critical_len;
      slowest = std::max(slowest, stage_time);
      out.total_work += stage_time;
    }
    out.completion += slowest;
  }
  return out;
}

TrialOutcome run_asynchronous(const SimConfig& cfg, std::uint64_t trial) {
  struct Request {
    double time;
    std::uint32_t process;
    bool operator>(const Request& other) const {
      return time != other.time ? time > other.time : process > other.process;
    }
  };
  std::priority_queue<Request, std::vector<Request>, std::greater<>> pending;
  std::vector<std::uint64_t> next_stage(cfg.p, 0);
  TrialOutcome out;

  auto submit = [&](std::uint32_t proc, double clock) {
    const double service = service_draw(cfg, trial, proc, next_stage[proc]);
    out.total_work += service + cfg.critical_len;
    pending.push({clock + service, proc});
  };
  for (std::uint32_t proc = 0; proc < cfg.p; ++proc) {
    submit(proc, 0.0);
  }

  double token_free = 0.0;
  while (!pending.empty()) {
    const Request req = pending.top();
    pending.pop();
    const double start = std::max(req.time, token_free);
    const double finish = start + cfg.critical_len;
    token_free = finish;
    if (++next_stage[req.process] < cfg.stages) {
      submit(req.process, finish);
    } else {
      out.completion = std::max(out.completion, finish);
    }
  }
  return out;
}

}  // namespace

SimResult simulate(const SimConfig& config) {
  config.validate();
  SimResult result;
  result.completion_samples.reserve(config.trials);
  double completion_sum = 0.0;
  double work_sum = 0.0;
  double speedup_sum = 0.0;
  for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
    const auto outcome = config.mode == SimMode::synchronized ? run_synchronized(config, trial)
                                                              : run_asynchronous(config, trial);
    result.completion_samples.push_back(outcome.completion);
    completion_sum += outcome.completion;
    work_sum += outcome.total_work;
    speedup_sum += outcome.total_work / outcome.completion;
  }
  const double trials = static_cast<double>(config.trials);
  result.mean_completion = completion_sum / trials;
  result.total_work_mean = work_sum / trials;
  result.speedup_estimate = speedup_sum / trials;
  result.efficiency_estimate = result.speedup_estimate / static_cast<double>(config.p);
  result.per_stage_mean = result.mean_completion / static_cast<double>(config.stages);
  return result;
}

double expected_max_exponential(std::uint32_t p, double mean) {
  if (p < 1) throw DomainError("p must be >= 1");
  if (!(mean > 0.0)) throw DomainError("mean must be positive");
  double harmonic = 0.0;
  for (std::uint32_t k = p; k >= 1; --k) {
    harmonic += 1.0 / static_cast<double>(k);
  }
  return mean * harmonic;
}

std::uint64_t curve_seed(std::uint64_t base_seed, std::uint32_t p) {
  return mix_key({base_seed, 0x6375727665ULL, p});
}

std::vector<CurvePoint> predicted_speedup_curve(const SimConfig& config_template,
                                                std::span<const std::uint32_t> p_list) {
  if (p_list.empty()) {
    throw DomainError("p_list must not be empty");
  }
  std::vector<CurvePoint> curve;
  curve.reserve(p_list.size());
  for (auto p : p_list) {
    SimConfig cfg = config_template;
    cfg.p = p;
    cfg.seed = curve_seed(config_template.seed, p);
    curve.push_back({p, simulate(cfg).speedup_estimate});
  }
  return curve;
}

}  // namespace parlab
