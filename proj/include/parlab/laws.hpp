#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace parlab {

/// Fixed-size (strong scaling) model. p_frac is the parallelizable share of
/// the baseline time; s_comp the speedup that share receives.
struct AmdahlParams {
  double p_frac = 0.0;
  double s_comp = 1.0;

  void validate() const;
};

double amdahl_speedup(const AmdahlParams& params);

/// Time left after parallelizing: (1 - p_frac) ts + p_frac ts / s_comp.
double amdahl_parallel_time(double ts, const AmdahlParams& params);

/// Scaled (weak scaling) model. The two fractions must sum to one; the
/// constructor rejects anything else.
class GustafsonParams {
 public:
  static constexpr double kFractionSumTolerance = 1e-12;

  GustafsonParams(double f_seq, double f_par, double work, double tc, std::uint64_t p);

  double f_seq() const noexcept { return f_seq_; }
  double f_par() const noexcept { return f_par_; }
  double work() const noexcept { return work_; }
  double tc() const noexcept { return tc_; }
  std::uint64_t p() const noexcept { return p_; }

 private:
  double f_seq_;
  double f_par_;
  double work_;
  double tc_;
  std::uint64_t p_;
};

struct GustafsonTimes {
  double t_parallel = 0.0;
  double t_sequential = 0.0;
};

GustafsonTimes gustafson_times(const GustafsonParams& params);

/// p + (1 - p) f_seq
double gustafson_speedup(double f_seq, std::uint64_t p);

struct SerialFractionFit {
  double f_seq = 0.0;      // clamped into [0, 1]
  double unclamped = 0.0;  // raw least-squares estimate
  bool clamped = false;
  std::size_t points_used = 0;  // points with p >= 2
};

struct WorkerSpeedup {
  std::uint64_t p = 1;
  double speedup = 1.0;
};

/// Serial fraction from measured speedups, by least squares on the line
/// 1/S = f + (1 - f)/p. A single point reduces to the Karp-Flatt metric.
/// Points at p = 1 carry no information and are ignored.
SerialFractionFit fit_serial_fraction(std::span<const WorkerSpeedup> points);

/// Parallel overhead To(p) = c0 + c1 p + c1log p log2(p) + c2 p^2, seconds.
struct OverheadModel {
  double c0 = 0.0;
  double c1 = 0.0;
  double c1log = 0.0;
  double c2 = 0.0;

  void validate() const;
  double operator()(std::uint64_t p) const;
};

/// E = n tc / (n tc + To(p)) for a sequential run costing n tc.
double iso_efficiency(double n, double tc, const OverheadModel& overhead, std::uint64_t p);

/// Problem size n at which iso_efficiency(n, ...) == e_target.
double iso_problem_size(double e_target, double tc, const OverheadModel& overhead,
                        std::uint64_t p);

struct IsoPoint {
  std::uint64_t p = 1;
  double n = 0.0;
};

/// iso_problem_size for each p, in input order, duplicates kept.
std::vector<IsoPoint> iso_curve(double e_target, double tc, const OverheadModel& overhead,
                                std::span<const std::uint64_t> p_list);

}  // namespace parlab
