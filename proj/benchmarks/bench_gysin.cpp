#include <benchmark/benchmark.h>

#include "flagforms/charpoly.hpp"
#include "flagforms/gysin.hpp"
#include "flagforms/rootcalc.hpp"

using namespace flagforms;

namespace {

RootPoly top_monomial(const DimensionSequence& rho, int extra) {
  std::vector<int> e(static_cast<std::size_t>(rho.rank()), 0);
  e[0] = relative_dimension(rho) + extra;
  return RootPoly::monomial(e);
}

}  // namespace

static void BM_SchurPolynomial(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    for (const Partition& sigma : partitions(k, 4)) benchmark::DoNotOptimize(schur_polynomial(sigma, 4));
  }
}
BENCHMARK(BM_SchurPolynomial)->DenseRange(2, 6, 2);

static void BM_Determinantal(benchmark::State& state) {
  const DimensionSequence rho = DimensionSequence::complete(static_cast<int>(state.range(0)));
  const RootPoly f = top_monomial(rho, 3);
  for (auto _ : state) {
    DeterminantalPushforward dp(rho);
    benchmark::DoNotOptimize(dp.push(f));
  }
}
BENCHMARK(BM_Determinantal)->DenseRange(2, 4);

static void BM_Symmetrizer(benchmark::State& state) {
  const DimensionSequence rho = DimensionSequence::complete(static_cast<int>(state.range(0)));
  const RootPoly f = top_monomial(rho, 3);
  const SymmetrizerOracle oracle(rho);
  for (auto _ : state) benchmark::DoNotOptimize(oracle.push(f));
}
BENCHMARK(BM_Symmetrizer)->DenseRange(2, 4);

static void BM_GrassmannPushforward(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(grassmann_quotient_pushforward(4, 4, 2, 4, 2));
}
BENCHMARK(BM_GrassmannPushforward);

static void BM_SchurDecomposition(benchmark::State& state) {
  const ChernPoly p = ChernPoly::var(4, 1).pow(4) + ChernPoly::var(4, 2).pow(2);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_in_schur_basis(p, 4));
}
BENCHMARK(BM_SchurDecomposition);

BENCHMARK_MAIN();
