#include <benchmark/benchmark.h>

#include "mcforge/corpus.hpp"
#include "mcforge/forms.hpp"
#include "mcforge/free_lie.hpp"
#include "mcforge/groupoid.hpp"
#include "mcforge/transfer.hpp"

using namespace mcforge;

static void BM_DupontHomotopy(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto monomials = monomials_up_to(n, 3);
  for (auto _ : state)
    for (const auto& m : monomials) benchmark::DoNotOptimize(dupont_h(PolyForm::monomial(n, m)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(monomials.size()));
}
BENCHMARK(BM_DupontHomotopy)->DenseRange(1, 3);

static void BM_FreeLieTruncation(benchmark::State& state) {
  int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    FreeLieTruncation L({{"x", 0}, {"y", 0}, {"z", 1}}, N);
    benchmark::DoNotOptimize(L.dim());
  }
}
BENCHMARK(BM_FreeLieTruncation)->DenseRange(3, 6);

static void BM_BuildMcn(benchmark::State& state) {
  int n = static_cast<int>(state.range(0)), N = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(build_mcn(n, N));
}
BENCHMARK(BM_BuildMcn)->Args({0, 6})->Args({1, 4})->Args({1, 5})->Args({2, 4})->Unit(benchmark::kMillisecond);

static void BM_GaugeFlow(benchmark::State& state) {
  DgLieAlgebra g = corpus::class3();
  Vec l = add(g.basis_vector(0), g.basis_vector(1)), x = g.basis_vector(2);
  for (auto _ : state) benchmark::DoNotOptimize(gauge_flow(g, l, x));
}
BENCHMARK(BM_GaugeFlow);

static void BM_Pi0Bruteforce(benchmark::State& state) {
  DgLieAlgebra g = corpus::class3(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pi0_bruteforce(g).count);
}
BENCHMARK(BM_Pi0Bruteforce)->Arg(5)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);

static void BM_HornFill2(benchmark::State& state) {
  DgLieAlgebra g = corpus::class3();
  Vec l = g.basis_vector(0), m = g.basis_vector(1), x = g.basis_vector(2);
  std::map<int, MCSimplex> horn{{0, gauge_simplex(g, m, gauge_flow(g, l, x))}, {2, gauge_simplex(g, l, x)}};
  for (auto _ : state) benchmark::DoNotOptimize(horn_fill(g, 2, 1, horn));
}
BENCHMARK(BM_HornFill2)->Unit(benchmark::kMicrosecond);

static void BM_TransferredOps(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(TransferredOps(n, 4).dim());
}
BENCHMARK(BM_TransferredOps)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
