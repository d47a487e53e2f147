#include <benchmark/benchmark.h>

#include <random>

#include "pencillab/geometry.hpp"
#include "pencillab/monodromy.hpp"
#include "pencillab/search.hpp"
#include "pencillab/severi.hpp"

using namespace pencillab;

namespace {

geometry::Pencil<PrimeField> random_pencil(const PrimeField& K, int k, std::mt19937_64& rng) {
  while (true) {
    std::vector<Residue> f, g;
    for (int i = 0; i <= k; ++i) {
      f.push_back(K.element(static_cast<std::uint32_t>(rng() % K.order())));
      g.push_back(K.element(static_cast<std::uint32_t>(rng() % K.order())));
    }
    try {
      return geometry::Pencil<PrimeField>(geometry::BinaryForm<PrimeField>(K, f), geometry::BinaryForm<PrimeField>(K, g));
    } catch (const Error&) {
    }
  }
}

void BM_Bezoutian(benchmark::State& state) {
  const PrimeField K(101);
  std::mt19937_64 rng(1);
  const auto pen = random_pencil(K, static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(geometry::bezoutian_curve(pen));
}
BENCHMARK(BM_Bezoutian)->DenseRange(2, 8, 2);

void BM_ReducedCurve(benchmark::State& state) {
  const PrimeField K(101);
  std::mt19937_64 rng(2);
  const auto curve = geometry::bezoutian_curve(random_pencil(K, static_cast<int>(state.range(0)), rng));
  for (auto _ : state) benchmark::DoNotOptimize(geometry::is_reduced_curve(curve));
}
BENCHMARK(BM_ReducedCurve)->DenseRange(2, 6, 2);

void BM_RamificationDivisorQ(benchmark::State& state) {
  const Rationals Q;
  const int k = static_cast<int>(state.range(0));
  std::vector<Rational> f(k + 1), g(k + 1);
  for (int i = 0; i <= k; ++i) {
    f[i] = Rational((i * 7 + 3) % 11 - 5);
    g[i] = Rational((i * 5 + 1) % 13 - 6, 2);
  }
  f[0] = 1;
  const geometry::Pencil<Rationals> pen(geometry::BinaryForm<Rationals>(Q, f), geometry::BinaryForm<Rationals>(Q, g));
  for (auto _ : state) benchmark::DoNotOptimize(geometry::ramification_divisor(pen));
}
BENCHMARK(BM_RamificationDivisorQ)->DenseRange(2, 6, 2);

void BM_EnumerateTuples(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(monodromy::enumerate_tuples(5, {2, 2, 2, 2, 2, 2}));
}
BENCHMARK(BM_EnumerateTuples)->Unit(benchmark::kMillisecond);

void BM_EnumerateTuplesExhaustive(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(monodromy::enumerate_tuples_exhaustive(4, {2, 2, 2, 2, 2, 2}));
}
BENCHMARK(BM_EnumerateTuplesExhaustive)->Unit(benchmark::kMillisecond);

void BM_EnumerateAlpha(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(severi::enumerate_alpha(30, 12, 6));
}
BENCHMARK(BM_EnumerateAlpha)->Unit(benchmark::kMillisecond);

void BM_SearchLinear(benchmark::State& state) {
  const PrimeField K(static_cast<std::uint32_t>(state.range(0)));
  search::SearchConstraint c;
  c.incidences.emplace_back(K, K.one(), K.from_int(3), K.from_int(5));
  for (auto _ : state) benchmark::DoNotOptimize(search::search_pencils_ffield(3, K, c));
}
BENCHMARK(BM_SearchLinear)->Arg(31)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_SearchExhaustive(benchmark::State& state) {
  const PrimeField K(7);
  search::SearchConstraint c;
  c.incidences.emplace_back(K, K.one(), K.from_int(3), K.from_int(5));
  search::SearchOptions o;
  o.mode = search::SearchMode::Exhaustive;
  for (auto _ : state) benchmark::DoNotOptimize(search::search_pencils_ffield(3, K, c, o));
}
BENCHMARK(BM_SearchExhaustive)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
