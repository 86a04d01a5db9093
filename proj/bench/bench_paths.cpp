#include <benchmark/benchmark.h>

#include "subdiff/estimator.hpp"
#include "subdiff/parallel.hpp"
#include "subdiff/sampler.hpp"

using namespace subdiff;

namespace {

PathSampler disk_sampler(const LaplaceExponent& e) {
  PathOptions o;
  o.dt = 1e-3;
  o.horizon = 5.0;
  return PathSampler(DiffusionSpec::identity(2), e, Domain::ball(Point{0.0, 0.0}, 1.0), o);
}

void run_batch(benchmark::State& state, const Exec& exec) {
  const auto ps = disk_sampler(LaplaceExponent::stable(1.0));
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto t = map_paths(n, exec, [&](std::size_t i) {
      Streams s = Streams::for_path(7, i);
      return ps.subordinate(Point{0.2, 0.0}, s).exit_time;
    });
    benchmark::DoNotOptimize(t.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PathsSerial(benchmark::State& state) { run_batch(state, Exec::serial()); }
void BM_PathsParallel(benchmark::State& state) { run_batch(state, Exec::parallel()); }

void BM_JumpDraw(benchmark::State& state) {
  const auto e = state.range(0) == 0 ? LaplaceExponent::stable(1.0) : LaplaceExponent::conjugate_gamma();
  const JumpSampler js(e, 1e-3);
  Streams s = Streams::for_path(3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(js.draw(s.subordinator));
}

}  // namespace

BENCHMARK(BM_PathsSerial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PathsParallel)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JumpDraw)->Arg(0)->Arg(1);

BENCHMARK_MAIN();
