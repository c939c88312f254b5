#include <benchmark/benchmark.h>

#include "twisted/fourier.hpp"
#include "twisted/independence.hpp"
#include "twisted/moments.hpp"
#include "twisted/orbit.hpp"
#include "twisted/random.hpp"
#include "twisted/targets.hpp"
#include "twisted/torus_arcs.hpp"

namespace {

using namespace twisted;

std::vector<Arc> random_arcs(std::size_t n, double rmax) {
  StreamRng rng(1, 0);
  std::vector<Arc> arcs(n);
  for (auto& a : arcs) a = {rng.uniform(), rmax * rng.uniform()};
  return arcs;
}

void BM_UnionMany(benchmark::State& state) {
  const auto arcs = random_arcs(static_cast<std::size_t>(state.range(0)), 1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(union_many(arcs).measure());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_UnionMany)->RangeMultiplier(10)->Range(1000, 1000000);

void BM_PairOverlapSum(benchmark::State& state) {
  const auto arcs = random_arcs(static_cast<std::size_t>(state.range(0)), 2.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pair_overlap_sum(arcs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PairOverlapSum)->RangeMultiplier(10)->Range(1000, 1000000);

void BM_OrbitPoints(benchmark::State& state) {
  const auto alpha = RealRep::constant(Constant::Sqrt2Minus1, static_cast<unsigned>(state.range(0)));
  const auto seq = SequenceSpec::polynomial(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(orbit_points(alpha, seq, {1, 100000}).points.data());
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_OrbitPoints)->Arg(128)->Arg(256)->Arg(1024);

void BM_TailUnion(benchmark::State& state) {
  const TargetFamily T{RealRep::constant(Constant::GoldenFraction, 256), SequenceSpec::polynomial(1, 2),
                       ApproxFunction::power(0.8)};
  for (auto _ : state) benchmark::DoNotOptimize(tail_union_measure(T, 1000, 100000));
}
BENCHMARK(BM_TailUnion);

void BM_StripIntersection(benchmark::State& state) {
  const auto m = StripEvent::make(1, 9, 0.3), n = StripEvent::make(2, 1000003, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(strip_intersection_measure(m, n));
}
BENCHMARK(BM_StripIntersection);

void BM_FourierCantor(benchmark::State& state) {
  const auto mu = MeasureSpec::cantor();
  double xi = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fourier_transform(mu, xi));
    xi += 1.0;
  }
}
BENCHMARK(BM_FourierCantor);

void BM_FourierDensity(benchmark::State& state) {
  const auto mu = MeasureSpec::density({{0.0, 0.5, {0.0, 4.0}}, {0.5, 1.0, {2.0, -4.0}}});
  double xi = 0.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fourier_transform(mu, xi));
    xi += 1.0;
  }
}
BENCHMARK(BM_FourierDensity);

}  // namespace

BENCHMARK_MAIN();
