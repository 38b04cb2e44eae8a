#include "parlab/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "parlab/errors.hpp"
#include "parlab/random.hpp"

namespace parlab {

namespace {

constexpr double kSingularDerivative = 1e-300;

void require_workers(std::uint32_t p) {
  if (p < 1) {
    throw DomainError("worker count p must be >= 1");
  }
}

// Runs body(w) for w in [0, p): worker 0 on the calling thread, the rest on
// their own threads. All are joined before returning.
template <typename Body>
void run_team(std::uint32_t p, Body&& body) {
  std::vector<std::jthread> team;
  team.reserve(p - 1);
  for (std::uint32_t w = 1; w < p; ++w) {
    team.emplace_back([&body, w] { body(w); });
  }
  body(0);
}

}  // namespace

std::string_view to_string(KernelId id) {
  switch (id) {
    case KernelId::vecmax:
      return "vecmax";
    case KernelId::newton_async:
      return "newton_async";
    case KernelId::matrix_expr:
      return "matrix_expr";
    case KernelId::linsolve:
      return "linsolve";
  }
  return "unknown";
}

KernelId parse_kernel_id(std::string_view name) {
  for (auto id : {KernelId::vecmax, KernelId::newton_async, KernelId::matrix_expr,
                  KernelId::linsolve}) {
    if (name == to_string(id)) {
      return id;
    }
  }
  throw DomainError("unknown kernel id '" + std::string(name) + "'");
}

void KernelSpec::validate() const {
  if (n < 1) throw DomainError("n must be >= 1");
  if (p < 1) throw DomainError("p must be >= 1");
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  if (max_iters < 1) throw DomainError("max_iters must be >= 1");
}

RowRange block_range(std::size_t count, std::uint32_t parts, std::uint32_t index) {
  const std::size_t base = count / parts;
  const std::size_t begin = base * index;
  const std::size_t end = index + 1 == parts ? count : begin + base;
  return {begin, end};
}

// ---------------------------------------------------------------------------
// Vector maximum

MaxResult vecmax_seq(std::span<const double> v) {
  if (v.empty()) {
    throw DomainError("vecmax of an empty vector");
  }
  MaxResult best{v[0], 0};
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > best.value) {
      best = {v[i], i};
    }
  }
  return best;
}

MaxResult vecmax_par(std::span<const double> v, std::uint32_t p) {
  require_workers(p);
  if (v.empty()) {
    throw DomainError("vecmax of an empty vector");
  }
  if (p == 1) {
    return vecmax_seq(v);
  }
  const auto workers = static_cast<std::uint32_t>(std::min<std::size_t>(p, v.size()));
  std::vector<MaxResult> partial(workers);
  run_team(workers, [&](std::uint32_t w) {
    const auto range = block_range(v.size(), workers, w);
    auto local = vecmax_seq(v.subspan(range.begin, range.end - range.begin));
    local.index += range.begin;
    partial[w] = local;
  });
  // Chunks are in index order, so a strict comparison keeps the lowest index.
  MaxResult best = partial[0];
  for (std::uint32_t w = 1; w < workers; ++w) {
    if (partial[w].value > best.value) {
      best = partial[w];
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Newton

namespace {

// Dependent floating-point chain the optimizer cannot fold away.
double burn(std::uint64_t cost) {
  double acc = 0.0;
  for (std::uint64_t i = 0; i < cost; ++i) {
    acc = acc * 0.5 + 1.0;
  }
  return acc;
}

}  // namespace

void NewtonProblem::validate() const {
  if (!std::isfinite(x0)) throw DomainError("x0 must be finite");
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  if (max_iters < 1) throw DomainError("max_iters must be >= 1");
}

double NewtonProblem::f(double x) const {
  double value = 0.0;
  switch (function) {
    case NewtonFunction::square_minus_two:
      value = x * x - 2.0;
      break;
    case NewtonFunction::cubic:
      value = x * x * x - x - 2.0;
      break;
    case NewtonFunction::cosine_fixed_point:
      value = std::cos(x) - x;
      break;
  }
  return eval_cost == 0 ? value : value + 0.0 * burn(eval_cost);
}

double NewtonProblem::df(double x) const {
  double value = 0.0;
  switch (function) {
    case NewtonFunction::square_minus_two:
      value = 2.0 * x;
      break;
    case NewtonFunction::cubic:
      value = 3.0 * x * x - 1.0;
      break;
    case NewtonFunction::cosine_fixed_point:
      value = -std::sin(x) - 1.0;
      break;
  }
  return eval_cost == 0 ? value : value + 0.0 * burn(eval_cost);
}

NewtonResult newton_seq(const NewtonProblem& prob) {
  prob.validate();
  double x = prob.x0;
  for (std::uint64_t iter = 0;; ++iter) {
    const double fx = prob.f(x);
    if (std::abs(fx) <= prob.tol) {
      return {x, iter};
    }
    if (iter == prob.max_iters) {
      throw ConvergenceError("Newton did not converge in " + std::to_string(prob.max_iters) +
                                 " iterations",
                             x, std::abs(fx));
    }
    const double dfx = prob.df(x);
    if (!(std::abs(dfx) >= kSingularDerivative)) {
      throw SingularDerivativeError("derivative vanishes at x = " + std::to_string(x), x);
    }
    x -= fx / dfx;
    if (!std::isfinite(x)) {
      throw ConvergenceError("Newton iterate diverged", x, std::abs(fx));
    }
  }
}

namespace {

// Shared cells of the asynchronous scheme. Every cell is read and written
// only while holding its own mutex; versions only grow.
struct AsyncGlobals {
  struct Iterate {
    double x;
    std::uint64_t version;
  };
  struct FValue {
    double x;  // the iterate fx was evaluated at
    double fx;
    std::uint64_t version;
  };
  struct Derivative {
    double dfx;
    std::uint64_t version;
  };

  std::mutex v1_mutex;
  Iterate v1{};
  std::mutex v2_mutex;
  FValue v2{};
  std::mutex v3_mutex;
  Derivative v3{};

  std::atomic<bool> done{false};
  std::atomic<std::uint64_t> total_updates{0};

  enum class Outcome { running, converged, budget, stalled, singular, diverged };
  std::mutex outcome_mutex;
  Outcome outcome = Outcome::running;
  double final_x = 0.0;

  Iterate read_v1() {
    std::lock_guard lock(v1_mutex);
    return v1;
  }
  void write_v1(Iterate value) {
    std::lock_guard lock(v1_mutex);
    v1 = value;
  }
  FValue read_v2() {
    std::lock_guard lock(v2_mutex);
    return v2;
  }
  void write_v2(FValue value) {
    std::lock_guard lock(v2_mutex);
    v2 = value;
  }
  Derivative read_v3() {
    std::lock_guard lock(v3_mutex);
    return v3;
  }
  void write_v3(Derivative value) {
    std::lock_guard lock(v3_mutex);
    v3 = value;
  }

  // First finisher wins.
  void finish(Outcome why, double x) {
    std::lock_guard lock(outcome_mutex);
    if (outcome == Outcome::running) {
      outcome = why;
      final_x = x;
    }
    done.store(true, std::memory_order_release);
  }
};

class Jitter {
 public:
  Jitter(std::uint64_t seed, std::uint64_t process) : rng_(mix_key({seed, process})), on_(seed != 0) {}

  void operator()() {
    if (!on_) return;
    const auto r = rng_() % 16;
    if (r == 0) {
      std::this_thread::sleep_for(std::chrono::microseconds(rng_() % 50));
    } else if (r < 4) {
      std::this_thread::yield();
    }
  }

 private:
  SplitMix64 rng_;
  bool on_;
};

void back_off(std::uint64_t consecutive_polls) {
  if (consecutive_polls < 128) {
    std::this_thread::yield();
  } else {
    std::this_thread::sleep_for(std::chrono::microseconds(10));
  }
}

}  // namespace

AsyncNewtonResult newton_async(const NewtonProblem& prob, const AsyncSchedule& schedule) {
  prob.validate();
  using Outcome = AsyncGlobals::Outcome;

  const double f0 = prob.f(prob.x0);
  if (std::abs(f0) <= prob.tol) {
    return {prob.x0, 0, 0, 0};
  }
  const double df0 = prob.df(prob.x0);
  if (!(std::abs(df0) >= kSingularDerivative)) {
    throw SingularDerivativeError("derivative vanishes at x0 = " + std::to_string(prob.x0),
                                  prob.x0);
  }

  AsyncGlobals g;
  g.v1 = {prob.x0, 0};
  g.v2 = {prob.x0, f0, 0};
  g.v3 = {df0, 0};

  std::uint64_t p1_updates = 0;
  std::uint64_t p2_updates = 0;
  std::uint64_t stale_polls = 0;

  // P1: owns V1 and V3. Steps from the freshest (x, f(x)) pair in V2 using
  // whatever derivative V3 holds. A given f value is consumed at most once.
  auto updater = [&] {
    Jitter jitter(schedule.jitter_seed, 1);
    std::uint64_t version = 0;
    std::uint64_t last_used = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t consecutive_stale = 0;
    double prev_abs_f = std::numeric_limits<double>::infinity();
    int increases = 0;
    while (!g.done.load(std::memory_order_acquire)) {
      jitter();
      const auto fv = g.read_v2();
      if (fv.version == last_used) {
        ++stale_polls;
        if (++consecutive_stale > schedule.max_stale_polls) {
          g.finish(Outcome::stalled, g.read_v1().x);
          break;
        }
        back_off(consecutive_stale);
        continue;
      }
      consecutive_stale = 0;
      last_used = fv.version;
      if (std::abs(fv.fx) <= prob.tol) {
        g.finish(Outcome::converged, fv.x);
        break;
      }
      const auto dv = g.read_v3();
      if (!(std::abs(dv.dfx) >= kSingularDerivative)) {
        g.finish(Outcome::singular, fv.x);
        break;
      }
      // Safeguard: after three consecutive growths of |f| take half steps.
      const double abs_f = std::abs(fv.fx);
      increases = abs_f > prev_abs_f ? increases + 1 : 0;
      prev_abs_f = abs_f;
      const double scale = increases >= 3 ? 0.5 : 1.0;
      const double x_new = fv.x - scale * fv.fx / dv.dfx;
      if (!std::isfinite(x_new)) {
        g.finish(Outcome::diverged, fv.x);
        break;
      }
      g.write_v1({x_new, ++version});
      ++p1_updates;
      if (g.total_updates.fetch_add(1) + 1 > prob.max_iters) {
        g.finish(Outcome::budget, x_new);
        break;
      }
      g.write_v3({prob.df(x_new), version});
    }
  };

  // P2: owns V2. Evaluates f at whatever iterate V1 currently holds.
  auto evaluator = [&] {
    if (schedule.starve_evaluator) {
      return;
    }
    Jitter jitter(schedule.jitter_seed, 2);
    std::uint64_t last_eval = 0;
    std::uint64_t consecutive_idle = 0;
    while (!g.done.load(std::memory_order_acquire)) {
      jitter();
      const auto it = g.read_v1();
      if (it.version == last_eval) {
        back_off(++consecutive_idle);
        continue;
      }
      consecutive_idle = 0;
      last_eval = it.version;
      const double fx = prob.f(it.x);
      g.write_v2({it.x, fx, it.version});
      ++p2_updates;
      if (std::abs(fx) <= prob.tol) {
        g.finish(Outcome::converged, it.x);
        break;
      }
      if (g.total_updates.fetch_add(1) + 1 > prob.max_iters) {
        g.finish(Outcome::budget, it.x);
        break;
      }
    }
  };

  {
    std::jthread p2(evaluator);
    updater();
  }

  AsyncNewtonResult result{g.final_x, p1_updates, p2_updates, stale_polls};
  const std::string counts = " (P1 updates " + std::to_string(p1_updates) + ", P2 updates " +
                             std::to_string(p2_updates) + ", stale polls " +
                             std::to_string(stale_polls) + ")";
  const double last_f = std::abs(g.read_v2().fx);
  switch (g.outcome) {
    case Outcome::converged:
      return result;
    case Outcome::singular:
      throw SingularDerivativeError("derivative vanishes near x = " + std::to_string(g.final_x) +
                                        counts,
                                    g.final_x);
    case Outcome::budget:
      throw ConvergenceError("asynchronous Newton exceeded " + std::to_string(prob.max_iters) +
                                 " updates" + counts,
                             g.final_x, last_f);
    case Outcome::stalled:
      throw ConvergenceError("asynchronous Newton stalled on stale V2" + counts, g.final_x,
                             last_f);
    case Outcome::diverged:
    case Outcome::running:
      break;
  }
  throw ConvergenceError("asynchronous Newton diverged" + counts, g.final_x, last_f);
}

// ---------------------------------------------------------------------------
// Matrix expression

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

double max_abs_diff(const Matrix& x, const Matrix& y) {
  if (x.order() != y.order()) {
    throw DomainError("matrix orders differ");
  }
  double worst = 0.0;
  const auto a = x.values();
  const auto b = y.values();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    if (!(d <= worst)) {
      worst = d;  // NaN propagates
    }
  }
  return worst;
}

void MatrixExprInstance::validate() const {
  const std::size_t n = a.order();
  if (n < 1) {
    throw DomainError("matrix order must be >= 1");
  }
  for (const Matrix* m : {&b, &c, &d, &g}) {
    if (m->order() != n) {
      throw DomainError("matrix expression operands must share order " + std::to_string(n));
    }
  }
  for (const Matrix* m : {&a, &b, &c, &d, &g}) {
    for (double v : m->values()) {
      if (!std::isfinite(v)) {
        throw DomainError("matrix entries must be finite");
      }
    }
  }
}

MatrixExprInstance make_matrix_expr_instance(std::size_t n, Matrix a, Matrix b, Matrix c,
                                             Matrix d, Matrix g) {
  MatrixExprInstance inst{std::move(a), std::move(b), std::move(c), std::move(d),
                          std::move(g)};
  if (inst.order() != n) {
    throw DomainError("matrix A does not have order " + std::to_string(n));
  }
  inst.validate();
  return inst;
}

namespace {

// out[rows] = x[rows] * y, accumulating in (i, k, j) order.
void multiply_rows(const Matrix& x, const Matrix& y, Matrix& out, RowRange rows) {
  const std::size_t n = x.order();
  for (std::size_t i = rows.begin; i < rows.end; ++i) {
    auto out_row = out.row(i);
    std::fill(out_row.begin(), out_row.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const double xik = x(i, k);
      const auto y_row = y.row(k);
      for (std::size_t j = 0; j < n; ++j) {
        out_row[j] += xik * y_row[j];
      }
    }
  }
}

void identity_plus(const Matrix& g, Matrix& out) {
  const std::size_t n = g.order();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = (i == j ? 1.0 : 0.0) + g(i, j);
    }
  }
}

void add_rows(const Matrix& x, const Matrix& y, Matrix& out, RowRange rows) {
  for (std::size_t i = rows.begin; i < rows.end; ++i) {
    const auto xr = x.row(i);
    const auto yr = y.row(i);
    auto outr = out.row(i);
    for (std::size_t j = 0; j < outr.size(); ++j) {
      outr[j] = xr[j] + yr[j];
    }
  }
}

}  // namespace

Matrix matrix_expr_seq(const MatrixExprInstance& inst) {
  inst.validate();
  const std::size_t n = inst.order();
  const RowRange all{0, n};
  Matrix ab(n), cd(n), ig(n), cdig(n), z(n);
  multiply_rows(inst.a, inst.b, ab, all);
  multiply_rows(inst.c, inst.d, cd, all);
  identity_plus(inst.g, ig);
  multiply_rows(cd, ig, cdig, all);
  add_rows(ab, cdig, z, all);
  return z;
}

Matrix matrix_expr_sync(const MatrixExprInstance& inst, std::uint32_t p) {
  require_workers(p);
  inst.validate();
  const std::size_t n = inst.order();
  const RowRange all{0, n};

  // Intermediates start as NaN so a read before the producing stage has
  // finished shows up in Z.
  const double poison = std::numeric_limits<double>::quiet_NaN();
  Matrix ab(n, poison), cd(n, poison), ig(n, poison), cdig(n, poison), z(n, poison);

  std::barrier stage_done(static_cast<std::ptrdiff_t>(p));
  run_team(p, [&](std::uint32_t w) {
    // Stage 1: three independent tasks, task t on worker t mod p.
    for (std::uint32_t task = w; task < 3; task += p) {
      switch (task) {
        case 0:
          multiply_rows(inst.a, inst.b, ab, all);
          break;
        case 1:
          multiply_rows(inst.c, inst.d, cd, all);
          break;
        default:
          identity_plus(inst.g, ig);
          break;
      }
    }
    stage_done.arrive_and_wait();

    const RowRange rows = block_range(n, p, w);
    multiply_rows(cd, ig, cdig, rows);
    stage_done.arrive_and_wait();

    add_rows(ab, cdig, z, rows);
  });
  return z;
}

// ---------------------------------------------------------------------------
// Jacobi

void LinearSystem::validate() const {
  const std::size_t n = a.order();
  if (n < 1) {
    throw DomainError("linear system order must be >= 1");
  }
  if (b.size() != n) {
    throw DomainError("right-hand side length " + std::to_string(b.size()) +
                      " does not match order " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) == 0.0) {
      throw DomainError("zero diagonal entry in row " + std::to_string(i));
    }
  }
}

namespace {

double jacobi_row(const LinearSystem& sys, std::span<const double> x, std::size_t i) {
  const auto row = sys.a.row(i);
  double s = sys.b[i];
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (j != i) {
      s -= row[j] * x[j];
    }
  }
  return s / row[i];
}

double row_residual(const LinearSystem& sys, std::span<const double> x, std::size_t i) {
  const auto row = sys.a.row(i);
  double r = -sys.b[i];
  for (std::size_t j = 0; j < row.size(); ++j) {
    r += row[j] * x[j];
  }
  return std::abs(r);
}

double max_residual(const LinearSystem& sys, std::span<const double> x, RowRange rows) {
  double worst = 0.0;
  for (std::size_t i = rows.begin; i < rows.end; ++i) {
    worst = std::max(worst, row_residual(sys, x, i));
  }
  return worst;
}

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) {
    m = std::max(m, std::abs(e));
  }
  return m;
}

void require_solver_limits(double tol, std::uint64_t max_iters) {
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  if (max_iters < 1) throw DomainError("max_iters must be >= 1");
}

ConvergenceError jacobi_failure(std::uint64_t sweeps, double residual) {
  return ConvergenceError("Jacobi did not converge in " + std::to_string(sweeps) +
                              " sweeps; residual " + std::to_string(residual),
                          std::numeric_limits<double>::quiet_NaN(), residual);
}

}  // namespace

double relative_residual(const LinearSystem& sys, std::span<const double> x) {
  sys.validate();
  const double bnorm = inf_norm(sys.b);
  const double r = max_residual(sys, x, {0, sys.a.order()});
  return bnorm == 0.0 ? r : r / bnorm;
}

LinsolveResult linsolve_seq(const LinearSystem& sys, double tol, std::uint64_t max_iters) {
  sys.validate();
  require_solver_limits(tol, max_iters);
  const std::size_t n = sys.a.order();
  const double bnorm = inf_norm(sys.b);
  std::vector<double> x(n, 0.0);
  if (bnorm == 0.0) {
    return {std::move(x), 0, 0.0};
  }
  double res = max_residual(sys, x, {0, n}) / bnorm;
  if (res <= tol) {
    return {std::move(x), 0, res};
  }
  std::vector<double> next(n);
  for (std::uint64_t sweep = 1; sweep <= max_iters; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = jacobi_row(sys, x, i);
    }
    x.swap(next);
    res = max_residual(sys, x, {0, n}) / bnorm;
    if (res <= tol) {
      return {std::move(x), sweep, res};
    }
  }
  throw jacobi_failure(max_iters, res);
}

LinsolveResult linsolve_par(const LinearSystem& sys, double tol, std::uint64_t max_iters,
                            std::uint32_t p) {
  require_workers(p);
  sys.validate();
  require_solver_limits(tol, max_iters);
  const std::size_t n = sys.a.order();
  const double bnorm = inf_norm(sys.b);
  std::vector<double> x(n, 0.0);
  if (bnorm == 0.0) {
    return {std::move(x), 0, 0.0};
  }
  double res = max_residual(sys, x, {0, n}) / bnorm;
  if (res <= tol) {
    return {std::move(x), 0, res};
  }

  std::vector<double> next(n);
  std::vector<double> partial(p, 0.0);
  std::uint64_t sweeps = 0;
  bool stop = false;
  bool converged = false;

  // Runs once per sweep after every worker has published its residual.
  auto end_of_sweep = [&]() noexcept {
    double worst = 0.0;
    for (double r : partial) {
      worst = std::max(worst, r);
    }
    res = worst / bnorm;
    ++sweeps;
    x.swap(next);
    converged = res <= tol;
    stop = converged || sweeps == max_iters;
  };
  std::barrier rows_done(static_cast<std::ptrdiff_t>(p));
  std::barrier sweep_done(static_cast<std::ptrdiff_t>(p), end_of_sweep);

  run_team(p, [&](std::uint32_t w) {
    const RowRange rows = block_range(n, p, w);
    while (true) {
      for (std::size_t i = rows.begin; i < rows.end; ++i) {
        next[i] = jacobi_row(sys, x, i);
      }
      rows_done.arrive_and_wait();
      partial[w] = max_residual(sys, next, rows);
      sweep_done.arrive_and_wait();
      if (stop) {
        break;
      }
    }
  });

  if (!converged) {
    throw jacobi_failure(max_iters, res);
  }
  return {std::move(x), sweeps, res};
}

// ---------------------------------------------------------------------------
// Instance generation

namespace {

Matrix random_matrix(std::size_t n, SplitMix64& rng) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& e : m.row(i)) {
      e = rng.symmetric();
    }
  }
  return m;
}

}  // namespace

KernelInput generate_instance(KernelId kernel, std::size_t n, std::uint64_t seed) {
  if (n < 1) {
    throw DomainError("n must be >= 1");
  }
  SplitMix64 rng(mix_key({seed, static_cast<std::uint64_t>(kernel), n}));
  switch (kernel) {
    case KernelId::vecmax: {
      std::vector<double> v(n);
      for (auto& e : v) {
        e = rng.symmetric();
      }
      return v;
    }
    case KernelId::newton_async: {
      // n scales the cost of each function evaluation.
      NewtonProblem prob;
      prob.function = NewtonFunction::square_minus_two;
      prob.x0 = 1.0 + to_unit(rng());
      prob.tol = 1e-12;
      prob.max_iters = 100;
      prob.eval_cost = n;
      return prob;
    }
    case KernelId::matrix_expr: {
      MatrixExprInstance inst;
      inst.a = random_matrix(n, rng);
      inst.b = random_matrix(n, rng);
      inst.c = random_matrix(n, rng);
      inst.d = random_matrix(n, rng);
      inst.g = random_matrix(n, rng);
      return inst;
    }
    case KernelId::linsolve: {
      LinearSystem sys{random_matrix(n, rng), std::vector<double>(n)};
      for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) off += std::abs(sys.a(i, j));
        }
        sys.a(i, i) = 1.0 + off;
      }
      for (auto& e : sys.b) {
        e = rng.symmetric();
      }
      return sys;
    }
  }
  throw DomainError("unknown kernel id");
}

KernelInput generate_instance(std::string_view kernel, std::size_t n, std::uint64_t seed) {
  return generate_instance(parse_kernel_id(kernel), n, seed);
}

}  // namespace parlab
