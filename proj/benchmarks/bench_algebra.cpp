// Microbenchmarks for the sparse exact arithmetic that dominates the
// pipeline: homogeneous products, truncated series products, composition.

#include <benchmark/benchmark.h>

#include <random>

#include "firstint/combinatorics.hpp"
#include "firstint/rational.hpp"
#include "firstint/graded_series.hpp"

using namespace firstint;

namespace {

HomoPoly<Rational> dense_homo(std::size_t nvars, int degree, int seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  HomoPoly<Rational> p(nvars, degree);
  for_each_multi_index(nvars, degree, [&](const MultiIndex& m) {
    int v = num(rng);
    if (v != 0) p.accumulate(m, Rational(v, den(rng)));
  });
  return p;
}

GradedSeries<Rational> dense_series(std::size_t nvars, int max_deg, int trunc, int seed) {
  GradedSeries<Rational> s(nvars, trunc);
  for (int d = 1; d <= max_deg; ++d) {
    auto h = dense_homo(nvars, d, seed + d);
    if (!h.is_zero()) s.set_component(std::move(h));
  }
  return s;
}

void BM_HomoMul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  auto a = dense_homo(n, d, 1);
  auto b = dense_homo(n, d, 2);
  for (auto _ : state) benchmark::DoNotOptimize(a.times(b));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(a.term_count() * b.term_count()));
}
BENCHMARK(BM_HomoMul)->Args({2, 8})->Args({3, 6})->Args({4, 5});

void BM_SeriesMul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int trunc = static_cast<int>(state.range(1));
  auto a = dense_series(n, trunc, trunc, 3);
  auto b = dense_series(n, trunc, trunc, 4);
  for (auto _ : state) benchmark::DoNotOptimize(a.times(b, trunc));
}
BENCHMARK(BM_SeriesMul)->Args({2, 10})->Args({3, 8});

void BM_Substitute(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int trunc = static_cast<int>(state.range(1));
  auto p = dense_series(n, 4, trunc, 5);
  std::vector<GradedSeries<Rational>> args;
  for (std::size_t k = 0; k < n; ++k) args.push_back(dense_series(n, 2, trunc, 6 + int(k)));
  for (auto _ : state) benchmark::DoNotOptimize(p.substitute(args, trunc));
}
BENCHMARK(BM_Substitute)->Args({2, 8})->Args({3, 6});

}  // namespace

BENCHMARK_MAIN();
