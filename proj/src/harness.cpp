#include "parlab/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <thread>

#include "parlab/metrics.hpp"

namespace parlab {

namespace detail {

std::string describe(std::exception_ptr e) {
  try {
    std::rethrow_exception(e);
  } catch (const std::exception& ex) {
    return ex.what();
  } catch (...) {
    return "unknown exception";
  }
}

}  // namespace detail

double lower_median(std::span<const double> values) {
  if (values.empty()) {
    throw DomainError("median of an empty sample");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted[(sorted.size() - 1) / 2];
}

TimingStats summarize_times(std::vector<double> raw_times) {
  TimingStats stats;
  stats.t_median = lower_median(raw_times);
  stats.t_min = *std::min_element(raw_times.begin(), raw_times.end());
  stats.raw_times = std::move(raw_times);
  return stats;
}

double clock_resolution() {
  return static_cast<double>(BenchClock::period::num) /
         static_cast<double>(BenchClock::period::den);
}

namespace {
std::string format_seconds(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}
}  // namespace

std::string host_descriptor() {
  return "hardware_threads=" + std::to_string(std::thread::hardware_concurrency()) +
         ";timer=steady_clock;resolution_seconds=" + format_seconds(clock_resolution());
}

std::string_view to_string(BaselinePolicy policy) {
  return policy == BaselinePolicy::sequential_algorithm ? "seq" : "par1";
}

void BenchPlan::validate() const {
  if (kernel_ids.empty()) throw DomainError("plan needs at least one kernel");
  if (sizes.empty()) throw DomainError("plan needs at least one problem size");
  if (proc_counts.empty()) throw DomainError("plan needs at least one worker count");
  if (reps < 1) throw DomainError("reps must be >= 1");
  for (auto n : sizes) {
    if (n < 1) throw DomainError("every n must be >= 1");
  }
  for (auto p : proc_counts) {
    if (p < 1) throw DomainError("every p must be >= 1");
  }
}

// ---------------------------------------------------------------------------
// Built-in kernels

namespace {

class VecmaxBench final : public BenchKernel {
 public:
  std::string id() const override { return "vecmax"; }

  void prepare(std::size_t n, std::uint64_t seed) override {
    values_ = std::get<std::vector<double>>(generate_instance(KernelId::vecmax, n, seed));
    reference_ = vecmax_seq(values_);
  }
  void run_sequential() override { seq_out_ = vecmax_seq(values_); }
  void run_parallel(std::uint32_t p) override { par_out_ = vecmax_par(values_, p); }
  std::optional<std::string> check_parallel() const override {
    if (par_out_ == reference_) return std::nullopt;
    return "vecmax mismatch: index " + std::to_string(par_out_.index) + " vs reference " +
           std::to_string(reference_.index);
  }

 private:
  std::vector<double> values_;
  MaxResult reference_;
  MaxResult seq_out_;
  MaxResult par_out_;
};

class NewtonBench final : public BenchKernel {
 public:
  std::string id() const override { return "newton_async"; }

  void prepare(std::size_t n, std::uint64_t seed) override {
    problem_ = std::get<NewtonProblem>(generate_instance(KernelId::newton_async, n, seed));
    reference_ = newton_seq(problem_).root;
  }
  void run_sequential() override { seq_root_ = newton_seq(problem_).root; }
  void run_parallel(std::uint32_t p) override {
    if (p == 1) {
      par_root_ = newton_seq(problem_).root;
    } else if (p == 2) {
      par_root_ = newton_async(problem_).root;
    } else {
      throw DomainError("newton_async runs with exactly 2 processes (or 1 for the sequential path)");
    }
  }
  std::optional<std::string> check_parallel() const override {
    NewtonProblem plain = problem_;
    plain.eval_cost = 0;
    if (std::abs(plain.f(par_root_)) <= problem_.tol &&
        std::abs(par_root_ - reference_) <= 1e-9) {
      return std::nullopt;
    }
    return "newton root " + std::to_string(par_root_) + " vs reference " +
           std::to_string(reference_);
  }

 private:
  NewtonProblem problem_;
  double reference_ = 0.0;
  double seq_root_ = 0.0;
  double par_root_ = 0.0;
};

class MatrixExprBench final : public BenchKernel {
 public:
  std::string id() const override { return "matrix_expr"; }

  void prepare(std::size_t n, std::uint64_t seed) override {
    inst_ = std::get<MatrixExprInstance>(generate_instance(KernelId::matrix_expr, n, seed));
    reference_ = matrix_expr_seq(inst_);
  }
  void run_sequential() override { seq_out_ = matrix_expr_seq(inst_); }
  void run_parallel(std::uint32_t p) override { par_out_ = matrix_expr_sync(inst_, p); }
  std::optional<std::string> check_parallel() const override {
    const double diff = max_abs_diff(par_out_, reference_);
    if (diff <= 1e-9) return std::nullopt;
    return "matrix_expr max |dZ| = " + std::to_string(diff);
  }

 private:
  MatrixExprInstance inst_;
  Matrix reference_;
  Matrix seq_out_;
  Matrix par_out_;
};

class LinsolveBench final : public BenchKernel {
 public:
  static constexpr double kTol = 1e-10;

  std::string id() const override { return "linsolve"; }

  void prepare(std::size_t n, std::uint64_t seed) override {
    sys_ = std::get<LinearSystem>(generate_instance(KernelId::linsolve, n, seed));
    max_sweeps_ = 10 * n;
    reference_ = linsolve_seq(sys_, kTol, max_sweeps_);
  }
  void run_sequential() override { seq_out_ = linsolve_seq(sys_, kTol, max_sweeps_); }
  void run_parallel(std::uint32_t p) override {
    par_out_ = linsolve_par(sys_, kTol, max_sweeps_, p);
  }
  std::optional<std::string> check_parallel() const override {
    if (par_out_.sweeps != reference_.sweeps || par_out_.x.size() != reference_.x.size()) {
      return "linsolve sweep count " + std::to_string(par_out_.sweeps) + " vs reference " +
             std::to_string(reference_.sweeps);
    }
    double diff = 0.0;
    for (std::size_t i = 0; i < par_out_.x.size(); ++i) {
      diff = std::max(diff, std::abs(par_out_.x[i] - reference_.x[i]));
    }
    if (diff <= 1e-12) return std::nullopt;
    return "linsolve max |dx| = " + std::to_string(diff);
  }

 private:
  LinearSystem sys_;
  std::uint64_t max_sweeps_ = 10;
  LinsolveResult reference_;
  LinsolveResult seq_out_;
  LinsolveResult par_out_;
};

}  // namespace

std::unique_ptr<BenchKernel> make_builtin_kernel(KernelId id) {
  switch (id) {
    case KernelId::vecmax:
      return std::make_unique<VecmaxBench>();
    case KernelId::newton_async:
      return std::make_unique<NewtonBench>();
    case KernelId::matrix_expr:
      return std::make_unique<MatrixExprBench>();
    case KernelId::linsolve:
      return std::make_unique<LinsolveBench>();
  }
  throw DomainError("unknown kernel id");
}

KernelFactory builtin_kernels() {
  return [](std::string_view id) { return make_builtin_kernel(parse_kernel_id(id)); };
}

// ---------------------------------------------------------------------------
// Grid execution

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

BenchRecord blank_record(const std::string& kernel, std::size_t n, std::uint32_t p,
                         const std::string& host) {
  BenchRecord rec;
  rec.kernel_id = kernel;
  rec.n = n;
  rec.p = p;
  rec.t_min = kNaN;
  rec.t_median = kNaN;
  rec.baseline_t_median = kNaN;
  rec.speedup = kNaN;
  rec.efficiency = kNaN;
  rec.clock_resolution = clock_resolution();
  rec.host_descriptor = host;
  return rec;
}

void take_timings(BenchRecord& rec, TimingStats stats) {
  rec.raw_times = std::move(stats.raw_times);
  rec.t_min = stats.t_min;
  rec.t_median = stats.t_median;
}

}  // namespace

std::vector<BenchRecord> run_plan(const BenchPlan& plan, const KernelFactory& factory) {
  plan.validate();
  const std::string host = host_descriptor();
  std::vector<BenchRecord> records;
  records.reserve(plan.kernel_ids.size() * plan.sizes.size() * plan.proc_counts.size());

  for (const auto& kernel_id : plan.kernel_ids) {
    auto kernel = factory(kernel_id);
    for (auto n : plan.sizes) {
      const std::size_t row_start = records.size();
      for (auto p : plan.proc_counts) {
        records.push_back(blank_record(kernel_id, n, p, host));
      }
      auto row = std::span(records).subspan(row_start);
      auto fail_row = [&](const std::string& why) {
        for (auto& rec : row) {
          rec.error = why;
        }
      };

      double baseline = kNaN;
      try {
        kernel->prepare(n, plan.seed);
        if (plan.baseline_policy == BaselinePolicy::sequential_algorithm) {
          baseline = measure([&] { kernel->run_sequential(); }, plan.reps, plan.warmup).t_median;
        } else {
          baseline =
              measure([&] { kernel->run_parallel(1); }, plan.reps, plan.warmup).t_median;
          if (auto mismatch = kernel->check_parallel()) {
            fail_row("baseline oracle mismatch: " + *mismatch);
            continue;
          }
        }
      } catch (const std::exception& e) {
        fail_row(std::string("baseline failed: ") + e.what());
        continue;
      }

      for (auto& rec : row) {
        rec.baseline_t_median = baseline;
        try {
          take_timings(rec, measure([&] { kernel->run_parallel(rec.p); }, plan.reps,
                                    plan.warmup));
        } catch (const MeasurementError& e) {
          rec.raw_times = e.partial_times();
          rec.error = e.what();
          continue;
        }
        if (auto mismatch = kernel->check_parallel()) {
          rec.error = "oracle mismatch: " + *mismatch;
          continue;
        }
        if (!(rec.t_median > 0.0) || !(baseline > 0.0)) {
          rec.error = "median time below clock resolution";
          continue;
        }
        rec.speedup = speedup(baseline, rec.t_median);
        rec.efficiency = efficiency(rec.speedup, rec.p);
        rec.valid = true;
      }
    }
  }
  return records;
}

}  // namespace parlab
