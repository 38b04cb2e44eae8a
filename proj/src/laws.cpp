#include "parlab/laws.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parlab/errors.hpp"

namespace parlab {

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void AmdahlParams::validate() const {
  if (!in_unit_interval(p_frac)) {
    throw DomainError("p_frac must lie in [0, 1], got " + std::to_string(p_frac));
  }
  if (!(s_comp >= 1.0) || !std::isfinite(s_comp)) {
    throw DomainError("s_comp must be a finite value >= 1, got " + std::to_string(s_comp));
  }
}

double amdahl_speedup(const AmdahlParams& params) {
  params.validate();
  return 1.0 / ((1.0 - params.p_frac) + params.p_frac / params.s_comp);
}

double amdahl_parallel_time(double ts, const AmdahlParams& params) {
  params.validate();
  if (!(ts > 0.0) || !std::isfinite(ts)) {
    throw DomainError("ts must be a positive finite time");
  }
  return (1.0 - params.p_frac) * ts + params.p_frac * ts / params.s_comp;
}

GustafsonParams::GustafsonParams(double f_seq, double f_par, double work, double tc,
                                 std::uint64_t p)
    : f_seq_(f_seq), f_par_(f_par), work_(work), tc_(tc), p_(p) {
  if (!in_unit_interval(f_seq) || !in_unit_interval(f_par)) {
    throw DomainError("f_seq and f_par must each lie in [0, 1]");
  }
  if (std::abs(f_seq + f_par - 1.0) > kFractionSumTolerance) {
    throw DomainError("f_seq + f_par must equal 1");
  }
  if (!(work > 0.0) || !std::isfinite(work)) {
    throw DomainError("work must be positive");
  }
  if (!(tc > 0.0) || !std::isfinite(tc)) {
    throw DomainError("tc must be positive");
  }
  if (p < 1) {
    throw DomainError("p must be >= 1");
  }
}

GustafsonTimes gustafson_times(const GustafsonParams& params) {
  const double unit = params.work() * params.tc();
  const double p = static_cast<double>(params.p());
  return {(params.f_seq() + params.f_par()) * unit,
          (params.f_seq() + params.f_par() * p) * unit};
}

double gustafson_speedup(double f_seq, std::uint64_t p) {
  if (!in_unit_interval(f_seq)) {
    throw DomainError("f_seq must lie in [0, 1]");
  }
  if (p < 1) {
    throw DomainError("p must be >= 1");
  }
  const double pd = static_cast<double>(p);
  return pd + (1.0 - pd) * f_seq;
}

SerialFractionFit fit_serial_fraction(std::span<const WorkerSpeedup> points) {
  // With x = 1 - 1/p and y = 1/S - 1/p the model is y = f x, a line through
  // the origin, so f = sum(xy) / sum(x^2).
  double sxy = 0.0;
  double sxx = 0.0;
  std::size_t used = 0;
  for (const auto& pt : points) {
    if (!(pt.speedup > 0.0) || !std::isfinite(pt.speedup)) {
      throw DomainError("speedups must be positive and finite");
    }
    if (pt.p < 1) {
      throw DomainError("worker counts must be >= 1");
    }
    if (pt.p < 2) {
      continue;
    }
    const double inv_p = 1.0 / static_cast<double>(pt.p);
    const double x = 1.0 - inv_p;
    const double y = 1.0 / pt.speedup - inv_p;
    sxy += x * y;
    sxx += x * x;
    ++used;
  }
  if (used == 0) {
    throw InsufficientDataError("need at least one point with p >= 2");
  }
  SerialFractionFit fit;
  fit.unclamped = sxy / sxx;
  fit.f_seq = std::clamp(fit.unclamped, 0.0, 1.0);
  fit.clamped = fit.f_seq != fit.unclamped;
  fit.points_used = used;
  return fit;
}

void OverheadModel::validate() const {
  for (double c : {c0, c1, c1log, c2}) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw DomainError("overhead coefficients must be finite and >= 0");
    }
  }
}

double OverheadModel::operator()(std::uint64_t p) const {
  const double pd = static_cast<double>(p);
  return c0 + c1 * pd + c1log * pd * std::log2(pd) + c2 * pd * pd;
}

double iso_efficiency(double n, double tc, const OverheadModel& overhead, std::uint64_t p) {
  const double t1 = n * tc;
  return t1 / (t1 + overhead(p));
}

double iso_problem_size(double e_target, double tc, const OverheadModel& overhead,
                        std::uint64_t p) {
  if (!(e_target > 0.0 && e_target < 1.0)) {
    throw DomainError("target efficiency must lie in (0, 1)");
  }
  if (!(tc > 0.0) || !std::isfinite(tc)) {
    throw DomainError("tc must be positive");
  }
  if (p < 1) {
    throw DomainError("p must be >= 1");
  }
  overhead.validate();
  const double to = overhead(p);
  if (to == 0.0) {
    throw DegenerateOverheadError("overhead is zero at p = " + std::to_string(p) +
                                  "; every problem size has efficiency 1");
  }
  return e_target * to / ((1.0 - e_target) * tc);
}

std::vector<IsoPoint> iso_curve(double e_target, double tc, const OverheadModel& overhead,
                                std::span<const std::uint64_t> p_list) {
  std::vector<IsoPoint> curve;
  curve.reserve(p_list.size());
  for (auto p : p_list) {
    curve.push_back({p, iso_problem_size(e_target, tc, overhead, p)});
  }
  return curve;
}

}  // namespace parlab
