#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "ribnet/cauchy.hpp"
#include "ribnet/clifford.hpp"
#include "ribnet/diagnostics.hpp"
#include "ribnet/moebius.hpp"
#include "ribnet/seeds.hpp"

namespace {

using namespace ribnet;

Multivector random_multivector(const Algebra& alg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(alg.blade_count());
  for (auto& v : c) v = u(rng);
  return Multivector(alg, std::move(c));
}

void BM_GeometricProduct(benchmark::State& state) {
  const Algebra& alg = Algebra::get(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  const Multivector a = random_multivector(alg, rng), b = random_multivector(alg, rng);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_GeometricProduct)->Arg(3)->Arg(4)->Arg(5);

void BM_OuterProduct(benchmark::State& state) {
  const Algebra& alg = Algebra::get(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(2);
  const Multivector a = random_multivector(alg, rng), b = random_multivector(alg, rng);
  for (auto _ : state) benchmark::DoNotOptimize(a ^ b);
}
BENCHMARK(BM_OuterProduct)->Arg(3)->Arg(4);

void BM_CrossRatio(benchmark::State& state) {
  const Algebra& alg = Algebra::get(3);
  std::vector<ConformalPoint> p;
  for (double x : {0.0, 1.0, 2.0, 3.0}) p.push_back(lift(alg, EuclideanPoint::Unit(3, 0) * x));
  const Versor V = random_moebius(alg, 3);
  std::vector<Multivector> q;
  for (const auto& x : p) q.push_back(V.apply(x.vec()));
  for (auto _ : state) benchmark::DoNotOptimize(cross_ratio(q[0], q[1], q[2], q[3]));
}
BENCHMARK(BM_CrossRatio);

void BM_CompleteCell(benchmark::State& state) {
  const Algebra& alg = Algebra::get(3);
  const Versor V = random_moebius(alg, 4);
  std::vector<ConformalPoint> seven;
  for (int b = 0; b < 7; ++b) {
    EuclideanPoint x(3);
    x << (b & 1), (b >> 1) & 1, (b >> 2) & 1;
    seven.push_back(ConformalPoint::from_vector(V.apply(lift(alg, x).vec())));
  }
  for (auto _ : state) benchmark::DoNotOptimize(complete_cell(seven));
}
BENCHMARK(BM_CompleteCell);

void BM_SeedFrames(benchmark::State& state) {
  const int e = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(seed_random_frames(3, {e, e, e}, {}, 5));
}
BENCHMARK(BM_SeedFrames)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_PairFill(benchmark::State& state) {
  const int e = static_cast<int>(state.range(0));
  const FrameSeed s = seed_random_frames(3, {e, e, e}, {}, 6);
  const InitialData init = initial_data_from_net(nets_from_frames(s.lattice, s.frames), true);
  for (auto _ : state) benchmark::DoNotOptimize(fill_pair_lattice(init));
}
BENCHMARK(BM_PairFill)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& state) {
  const int e = static_cast<int>(state.range(0));
  const FrameSeed s = seed_random_frames(3, {e, e, e}, {}, 7);
  const PairNet net = nets_from_frames(s.lattice, s.frames);
  for (auto _ : state) benchmark::DoNotOptimize(verify_net(net));
}
BENCHMARK(BM_Verify)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
