#include <benchmark/benchmark.h>

#include "flagforms/flagnum.hpp"
#include "flagforms/formlab.hpp"

using namespace flagforms;

static void BM_CurvatureAt(benchmark::State& state) {
  const FlagChart chart(DimensionSequence({0, 1, 3}), 2);
  const CurvatureTensor c = griffiths_sample(2, 3, 3, 1);
  Eigen::VectorXcd zeta(chart.dim());
  zeta << Complex(0.3, -0.2), Complex(-1.1, 0.4);
  CurvatureOptions o;
  o.recenter = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(curvature_at(chart, {1, 2}, c, zeta, o));
}
BENCHMARK(BM_CurvatureAt)->Arg(0)->Arg(1);

static void BM_ChernForms(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const FormMatrix m = curvature_matrix(random_hermitian_tensor(4, r, 2));
  for (auto _ : state) benchmark::DoNotOptimize(chern_forms(m));
}
BENCHMARK(BM_ChernForms)->DenseRange(2, 4);

static void BM_PushforwardNumeric(benchmark::State& state) {
  const FlagChart chart(DimensionSequence({0, 1, 2}), 2);
  const CurvatureTensor c = griffiths_sample(2, 2, 3, 3);
  const Expr f = parse_expression("c1(U2/U1)^3");
  SamplerConfig s;
  s.samples = static_cast<std::size_t>(state.range(0));
  s.seed = 7;
  s.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(pushforward_numeric(chart, f, c, s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PushforwardNumeric)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_PositivityCheck(benchmark::State& state) {
  const CurvatureTensor c = griffiths_sample(4, 4, 6, 4);
  const auto ch = chern_forms(curvature_matrix(c));
  const ExtForm form = ch[1] * ch[1];
  for (auto _ : state) benchmark::DoNotOptimize(positivity_check(form, 2, 4, 1000, 5));
}
BENCHMARK(BM_PositivityCheck)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
