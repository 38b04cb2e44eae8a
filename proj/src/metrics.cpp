#include "parlab/metrics.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "parlab/errors.hpp"

namespace parlab {

namespace {

void require_positive_time(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be a positive finite time, got " +
                      std::to_string(value));
  }
}

}  // namespace

SpeedupPoint SpeedupPoint::make(std::string kernel_id, std::uint64_t n, std::uint32_t p,
                                double t1, double tp) {
  SpeedupPoint point;
  point.kernel_id = std::move(kernel_id);
  point.n = n;
  point.p = p;
  point.t1 = t1;
  point.tp = tp;
  point.speedup = parlab::speedup(t1, tp);
  point.efficiency = parlab::efficiency(point.speedup, p);
  return point;
}

void SerialParallelSplit::validate() const {
  if (!(ts >= 0.0) || !std::isfinite(ts)) {
    throw DomainError("ts must be a finite time >= 0");
  }
  if (!(tp >= 0.0) || !std::isfinite(tp)) {
    throw DomainError("tp must be a finite time >= 0");
  }
  if (!(ts + tp > 0.0)) {
    throw DomainError("ts + tp must be positive");
  }
}

double speedup(double t1, double tN) {
  require_positive_time(t1, "t1");
  require_positive_time(tN, "tN");
  return t1 / tN;
}

double predicted_speedup(const SerialParallelSplit& split, std::uint64_t N) {
  split.validate();
  if (N < 1) {
    throw DomainError("N must be >= 1");
  }
  const double total = split.ts + split.tp;
  return total / (split.ts + split.tp / static_cast<double>(N));
}

double efficiency(double speedup, std::uint64_t p) {
  if (p < 1) {
    throw DomainError("p must be >= 1");
  }
  if (!(speedup > 0.0) || !std::isfinite(speedup)) {
    throw DomainError("speedup must be positive and finite");
  }
  return speedup / static_cast<double>(p);
}

std::uint64_t matmul_work_size(std::uint64_t n) {
  if (n < 1) {
    throw DomainError("matrix order n must be >= 1");
  }
  // 2 n^2 must fit in 64 bits
  if (n > 3037000499ULL) {
    throw DomainError("matrix order n too large");
  }
  return 2 * n * n;
}

}  // namespace parlab
