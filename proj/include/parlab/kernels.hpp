#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace parlab {

enum class KernelId { vecmax, newton_async, matrix_expr, linsolve };

std::string_view to_string(KernelId id);
KernelId parse_kernel_id(std::string_view name);

/// Problem size, worker count and solver limits for one kernel run.
struct KernelSpec {
  KernelId kernel = KernelId::vecmax;
  std::size_t n = 1;
  std::uint32_t p = 1;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  std::uint64_t max_iters = 1000;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Vector maximum

struct MaxResult {
  double value = 0.0;
  std::size_t index = 0;

  friend bool operator==(const MaxResult&, const MaxResult&) = default;
};

/// Largest element and the lowest index holding it.
MaxResult vecmax_seq(std::span<const double> v);

/// Same result as vecmax_seq for every input and every p. Each worker scans
/// one contiguous chunk; chunk winners are reduced in index order.
MaxResult vecmax_par(std::span<const double> v, std::uint32_t p);

// ---------------------------------------------------------------------------
// Newton root finding

enum class NewtonFunction {
  square_minus_two,      // x^2 - 2
  cubic,                 // x^3 - x - 2
  cosine_fixed_point,    // cos(x) - x
};

struct NewtonProblem {
  NewtonFunction function = NewtonFunction::square_minus_two;
  double x0 = 1.0;
  double tol = 1e-12;  // accept x once |f(x)| <= tol
  std::uint64_t max_iters = 100;
  // Extra synthetic work per f or f' evaluation, in loop iterations. Lets
  // benchmarks model expensive function evaluations; never changes results.
  std::uint64_t eval_cost = 0;

  void validate() const;
  double f(double x) const;
  double df(double x) const;
};

struct NewtonResult {
  double root = 0.0;
  std::uint64_t iterations = 0;
};

/// x <- x - f(x)/f'(x) until |f(x)| <= tol.
NewtonResult newton_seq(const NewtonProblem& prob);

/// Schedule controls for newton_async. The defaults give a free-running
/// pair of threads.
struct AsyncSchedule {
  // Seeds random yields/short sleeps inside both loops; 0 disables jitter.
  std::uint64_t jitter_seed = 0;
  // The evaluator process never runs, so V2 stays at its initial value.
  bool starve_evaluator = false;
  // Reads of an already-consumed f value tolerated by the updater before
  // it reports a stall.
  std::uint64_t max_stale_polls = 1'000'000;
};

struct AsyncNewtonResult {
  double root = 0.0;
  std::uint64_t updater_updates = 0;    // writes to V1 by P1
  std::uint64_t evaluator_updates = 0;  // writes to V2 by P2
  std::uint64_t stale_polls = 0;
};

/// Two-process asynchronous Newton over shared cells. P1 owns the iterate
/// (V1) and the derivative (V3); P2 evaluates f at the latest iterate (V2).
/// Neither blocks on the other; each reads whatever the cells currently hold.
AsyncNewtonResult newton_async(const NewtonProblem& prob, const AsyncSchedule& schedule = {});

// ---------------------------------------------------------------------------
// Matrix expression Z = A B + (C D)(I + G)

/// Dense square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t order() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<const double> values() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

double max_abs_diff(const Matrix& x, const Matrix& y);

struct MatrixExprInstance {
  Matrix a, b, c, d, g;

  std::size_t order() const noexcept { return a.order(); }
  void validate() const;
};

MatrixExprInstance make_matrix_expr_instance(std::size_t n, Matrix a, Matrix b, Matrix c,
                                             Matrix d, Matrix g);

Matrix matrix_expr_seq(const MatrixExprInstance& inst);

/// Three-stage synchronized evaluation with p workers (default three):
/// stage 1 computes A B, C D and I + G as independent tasks, stage 2 the
/// product (C D)(I + G) and stage 3 the sum, both row-partitioned. Workers
/// meet at a barrier after each stage.
Matrix matrix_expr_sync(const MatrixExprInstance& inst, std::uint32_t p = 3);

// ---------------------------------------------------------------------------
// Jacobi linear solve

struct LinearSystem {
  Matrix a;
  std::vector<double> b;

  void validate() const;
};

struct LinsolveResult {
  std::vector<double> x;
  std::uint64_t sweeps = 0;
  double residual = 0.0;  // ||Ax - b||_inf / ||b||_inf
};

/// Relative infinity-norm residual ||Ax - b|| / ||b||.
double relative_residual(const LinearSystem& sys, std::span<const double> x);

/// Jacobi sweeps from x = 0 until the relative residual is <= tol.
LinsolveResult linsolve_seq(const LinearSystem& sys, double tol, std::uint64_t max_iters);

/// Row-partitioned Jacobi, one barrier per phase. Performs the same
/// arithmetic in the same order as linsolve_seq, so iterates match exactly.
LinsolveResult linsolve_par(const LinearSystem& sys, double tol, std::uint64_t max_iters,
                            std::uint32_t p);

// ---------------------------------------------------------------------------
// Instance generation

using KernelInput = std::variant<std::vector<double>, NewtonProblem, MatrixExprInstance,
                                 LinearSystem>;

/// Deterministic instance for (kernel, n, seed); entries uniform in [-1, 1].
/// Linear systems get diag = 1 + sum |off-diagonal row entries|.
KernelInput generate_instance(KernelId kernel, std::size_t n, std::uint64_t seed);
KernelInput generate_instance(std::string_view kernel, std::size_t n, std::uint64_t seed);

/// Contiguous block partition of [0, count) into `parts` ranges; the last
/// range takes the remainder.
struct RowRange {
  std::size_t begin = 0;
  std::size_t end = 0;
};
RowRange block_range(std::size_t count, std::uint32_t parts, std::uint32_t index);

}  // namespace parlab
