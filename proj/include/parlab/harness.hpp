#pragma once

#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "parlab/errors.hpp"
#include "parlab/kernels.hpp"

namespace parlab {

using BenchClock = std::chrono::steady_clock;

struct TimingStats {
  std::vector<double> raw_times;  // seconds, in execution order
  double t_min = 0.0;
  double t_median = 0.0;  // lower median for an even count
};

/// Lower median: element (size - 1) / 2 of the sorted values.
double lower_median(std::span<const double> values);

TimingStats summarize_times(std::vector<double> raw_times);

/// A measured task threw. Carries the timings completed before the failure
/// and the original exception.
class MeasurementError : public std::runtime_error {
 public:
  MeasurementError(const std::string& what, std::vector<double> partial,
                   std::exception_ptr cause)
      : std::runtime_error(what), partial_(std::move(partial)), cause_(std::move(cause)) {}

  const std::vector<double>& partial_times() const noexcept { return partial_; }
  std::exception_ptr cause() const noexcept { return cause_; }

 private:
  std::vector<double> partial_;
  std::exception_ptr cause_;
};

template <typename R>
struct Measured {
  TimingStats stats;
  R output;  // result of the final timed repetition
};

namespace detail {
std::string describe(std::exception_ptr e);
}

/// Runs `task` warmup times untimed, then reps times on a monotonic clock.
/// Returns TimingStats for void tasks, Measured<R> otherwise.
template <typename Task>
auto measure(Task&& task, std::uint32_t reps, std::uint32_t warmup) {
  using R = std::invoke_result_t<Task&>;
  if (reps < 1) {
    throw DomainError("reps must be >= 1");
  }
  std::vector<double> times;
  times.reserve(reps);
  [[maybe_unused]] std::optional<std::conditional_t<std::is_void_v<R>, int, R>> last;
  try {
    for (std::uint32_t i = 0; i < warmup; ++i) {
      task();
    }
    for (std::uint32_t rep = 0; rep < reps; ++rep) {
      const auto start = BenchClock::now();
      if constexpr (std::is_void_v<R>) {
        task();
      } else if (rep + 1 == reps) {
        last.emplace(task());
      } else {
        static_cast<void>(task());
      }
      const auto stop = BenchClock::now();
      times.push_back(std::chrono::duration<double>(stop - start).count());
    }
  } catch (...) {
    auto cause = std::current_exception();
    throw MeasurementError("measurement aborted after " + std::to_string(times.size()) +
                               " timed repetitions: " + detail::describe(cause),
                           std::move(times), cause);
  }
  if constexpr (std::is_void_v<R>) {
    return summarize_times(std::move(times));
  } else {
    return Measured<R>{summarize_times(std::move(times)), std::move(*last)};
  }
}

/// A benchmarkable kernel: one instance, a sequential algorithm, a parallel
/// algorithm, and a check of the latest parallel output against a
/// sequential reference computed in prepare().
class BenchKernel {
 public:
  virtual ~BenchKernel() = default;

  virtual std::string id() const = 0;
  virtual void prepare(std::size_t n, std::uint64_t seed) = 0;
  virtual void run_sequential() = 0;
  virtual void run_parallel(std::uint32_t p) = 0;
  /// Empty when the latest parallel output matches the reference; otherwise
  /// a description of the mismatch.
  virtual std::optional<std::string> check_parallel() const = 0;
};

std::unique_ptr<BenchKernel> make_builtin_kernel(KernelId id);

using KernelFactory = std::function<std::unique_ptr<BenchKernel>(std::string_view id)>;

/// Factory for the four built-in kernels; throws DomainError for other ids.
KernelFactory builtin_kernels();

enum class BaselinePolicy {
  sequential_algorithm,  // T(1) from the sequential algorithm (absolute speedup)
  parallel_at_p1,        // T(1) from the parallel algorithm on one worker (relative)
};

std::string_view to_string(BaselinePolicy policy);

struct BenchPlan {
  std::vector<std::string> kernel_ids;
  std::vector<std::size_t> sizes;
  std::vector<std::uint32_t> proc_counts;
  std::uint32_t reps = 10;
  std::uint32_t warmup = 3;
  std::uint64_t seed = 42;
  BaselinePolicy baseline_policy = BaselinePolicy::sequential_algorithm;

  void validate() const;
};

struct BenchRecord {
  std::string kernel_id;
  std::size_t n = 0;
  std::uint32_t p = 1;
  std::vector<double> raw_times;
  double t_min = 0.0;
  double t_median = 0.0;
  double baseline_t_median = 0.0;
  double speedup = 0.0;  // NaN when the record is invalid
  double efficiency = 0.0;
  double clock_resolution = 0.0;
  std::string host_descriptor;
  bool valid = false;
  std::string error;  // why the record is invalid
};

/// Seconds per tick of BenchClock.
double clock_resolution();

/// Hardware threads and timer description of this host.
std::string host_descriptor();

/// Runs every (kernel, n, p) cell in grid order: kernels, then sizes, then
/// worker counts. Each parallel output is checked against the sequential
/// reference before its timing is accepted; a failing cell is marked invalid
/// and the rest of the grid still runs.
std::vector<BenchRecord> run_plan(const BenchPlan& plan,
                                  const KernelFactory& factory = builtin_kernels());

}  // namespace parlab
