// End-to-end benchmarks: homological solves and the full first-integral
// recursion at corpus-sized inputs.

#include <benchmark/benchmark.h>

#include <random>

#include "firstint/integral.hpp"

using namespace firstint;

namespace {

Matrix<Rational> lower_triangular(std::size_t k, int seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> diag(1, 5), off(-3, 3);
  Matrix<Rational> b(k);
  for (std::size_t i = 0; i < k; ++i) {
    b.at(i, i) = Rational(-diag(rng));
    for (std::size_t j = 0; j < i; ++j) b.at(i, j) = Rational(off(rng));
  }
  return b;
}

HomoPoly<Rational> ideal_rhs(std::size_t nvars, int degree, int seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  HomoPoly<Rational> p(nvars, degree);
  for_each_multi_index(nvars, degree, [&](const MultiIndex& m) {
    if (m.is_pure_first()) return;
    int v = num(rng);
    if (v != 0) p.accumulate(m, Rational(v, den(rng)));
  });
  return p;
}

FactoredSystem<Rational> random_system(std::size_t n, int trunc, int seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  FactoredSystem<Rational> fs;
  fs.n = n;
  fs.trunc = trunc;
  fs.B = lower_triangular(n - 1, seed);
  auto series = [&](int s) {
    GradedSeries<Rational> g(n, trunc - 1);
    std::mt19937_64 r(seed + s);
    for (int d = 1; d <= 2; ++d) {
      for_each_multi_index(n, d, [&](const MultiIndex& m) {
        int v = num(r);
        if (v % 3 == 0 && v != 0) g.accumulate(m, Rational(v, den(r)));
      });
    }
    return g;
  };
  int s = 0;
  for (std::size_t j = 0; j + 1 < n; ++j) fs.F1.push_back(series(++s));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::vector<GradedSeries<Rational>> row;
    for (std::size_t j = 0; j + 1 < n; ++j) row.push_back(series(++s));
    fs.F2.push_back(std::move(row));
  }
  return fs;
}

void BM_HomologicalSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  auto b = lower_triangular(n - 1, 11);
  auto rhs = ideal_rhs(n, d, 12);
  for (auto _ : state) {
    SmallDivisorLog log;
    benchmark::DoNotOptimize(solve_homological(rhs, b, &log));
  }
}
BENCHMARK(BM_HomologicalSolve)->Args({3, 6})->Args({4, 8});

void BM_FirstIntegral(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int trunc = static_cast<int>(state.range(1));
  auto fs = random_system(n, trunc, 21);
  for (auto _ : state) benchmark::DoNotOptimize(compute_first_integral(fs));
}
BENCHMARK(BM_FirstIntegral)->Args({2, 12})->Args({3, 8})->Args({4, 6});

}  // namespace

BENCHMARK_MAIN();
