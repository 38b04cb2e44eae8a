#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "parlab/errors.hpp"
#include "parlab/metrics.hpp"

using namespace parlab;

TEST_CASE("speedup of ten minutes against two is five-fold") {
  CHECK(speedup(600.0, 120.0) == 5.0);
}

TEST_CASE("speedup identity and slowdown") {
  for (double t : {1e-9, 0.5, 3.0, 1e6}) {
    CHECK(speedup(t, t) == 1.0);
  }
  CHECK(speedup(3.0, 12.0) == 0.25);
}

TEST_CASE("speedup rejects non-positive times and names the argument") {
  CHECK_THROWS_WITH_AS(speedup(0.0, 1.0), doctest::Contains("t1"), DomainError);
  CHECK_THROWS_WITH_AS(speedup(1.0, -2.0), doctest::Contains("tN"), DomainError);
  CHECK_THROWS_AS(speedup(1.0, std::nan("")), DomainError);
}

TEST_CASE("predicted speedup worked values") {
  CHECK(predicted_speedup({0.0, 9.0}, 3) == 3.0);
  // (1 + 9) / (1 + 9/3)
  CHECK(predicted_speedup({1.0, 9.0}, 3) == doctest::Approx(10.0 / 4.0).epsilon(1e-15));
  CHECK(std::abs(predicted_speedup({1.0, 9.0}, 1'000'000'000ULL) - 10.0) <= 1e-6);
  CHECK_THROWS_AS(predicted_speedup({1.0, 9.0}, 0), DomainError);
  CHECK_THROWS_AS(predicted_speedup({0.0, 0.0}, 2), DomainError);
  CHECK_THROWS_AS(predicted_speedup({-1.0, 2.0}, 2), DomainError);
}

TEST_CASE("efficiency is never clamped") {
  CHECK(efficiency(4.0, 4) == 1.0);
  CHECK(efficiency(5.0, 10) == 0.5);
  CHECK(efficiency(12.0, 10) == doctest::Approx(1.2).epsilon(1e-15));
  CHECK_THROWS_AS(efficiency(1.0, 0), DomainError);
}

TEST_CASE("matmul work size") {
  CHECK(matmul_work_size(1) == 2);
  CHECK(matmul_work_size(3) == 18);
  for (std::uint64_t n : {1ULL, 7ULL, 1000ULL}) {
    // A x B and C x D of the same order are the same amount of work.
    CHECK(matmul_work_size(n) == matmul_work_size(n));
    CHECK(matmul_work_size(n) == 2 * n * n);
  }
  CHECK_THROWS_AS(matmul_work_size(0), DomainError);
}

TEST_CASE("SpeedupPoint derives consistent ratios") {
  const auto pt = SpeedupPoint::make("vecmax", 1024, 4, 8.0, 2.5);
  CHECK(pt.speedup == 8.0 / 2.5);
  CHECK(pt.efficiency == pt.speedup / 4.0);
  const auto super = SpeedupPoint::make("vecmax", 1024, 2, 9.0, 3.0);
  CHECK(super.efficiency == 1.5);
}

TEST_CASE("metric properties over random inputs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> time(1e-6, 1e3);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  std::uniform_int_distribution<std::uint64_t> workers(1, 1024);
  for (int i = 0; i < 2000; ++i) {
    const double t1 = time(rng);
    const double tn = time(rng);
    const double a = scale(rng);
    const auto p = workers(rng);
    const double s = speedup(t1, tn);
    CHECK(speedup(a * t1, a * tn) == doctest::Approx(s).epsilon(1e-14));
    CHECK(efficiency(s, p) * static_cast<double>(p) == doctest::Approx(s).epsilon(1e-14));

    const SerialParallelSplit split{time(rng) * (i % 5 == 0 ? 0.0 : 1.0), time(rng)};
    CHECK(predicted_speedup(split, 1) == 1.0);
    if (split.ts > 0.0) {
      const double bound = (split.ts + split.tp) / split.ts;
      CHECK(predicted_speedup(split, p) <= bound * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("predicted speedup strictly increases in N") {
  for (const SerialParallelSplit split : {SerialParallelSplit{1.0, 9.0},
                                          SerialParallelSplit{0.0, 1.0},
                                          SerialParallelSplit{5.0, 0.1}}) {
    double prev = predicted_speedup(split, 1);
    for (std::uint64_t n = 2; n <= 1024; ++n) {
      const double cur = predicted_speedup(split, n);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}
