#pragma once

#include <cstdint>
#include <string>

namespace parlab {

/// One (kernel, n, p) measurement. Built through make() so the derived
/// ratios always agree with the times they came from.
struct SpeedupPoint {
  std::string kernel_id;
  std::uint64_t n = 0;
  std::uint32_t p = 1;
  double t1 = 0.0;  // baseline wall time, seconds
  double tp = 0.0;  // wall time at p workers, seconds
  double speedup = 0.0;
  double efficiency = 0.0;  // not clamped; superlinear runs exceed 1

  static SpeedupPoint make(std::string kernel_id, std::uint64_t n, std::uint32_t p,
                           double t1, double tp);
};

/// Execution time split into a part that does not shrink with more workers
/// and a part that divides evenly among them.
struct SerialParallelSplit {
  double ts = 0.0;
  double tp = 0.0;

  void validate() const;
};

/// t1 / tN. Values below 1 are slowdowns and are returned as-is.
double speedup(double t1, double tN);

/// (ts + tp) / (ts + tp / N).
double predicted_speedup(const SerialParallelSplit& split, std::uint64_t N);

double efficiency(double speedup, std::uint64_t p);

/// Element count of one dense n-by-n product instance: its two operands,
/// 2 n^2. Every instance of the same order has the same size.
std::uint64_t matmul_work_size(std::uint64_t n);

}  // namespace parlab
