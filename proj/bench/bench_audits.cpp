// Serial reference vs OpenMP kernels on the exhaustive audits.
#include <benchmark/benchmark.h>

#include "pirmax/checks.hpp"
#include "pirmax/construct.hpp"
#include "pirmax/distance.hpp"
#include "pirmax/fixtures.hpp"
#include "pirmax/tree.hpp"

using namespace pirmax;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::kSerial : Exec::kParallel; }

void BM_ConverseAudit(benchmark::State& state) {
  const auto code = build_sldc(3, 3);
  const auto trees = enumerate_trees(code, 1000000).trees;
  for (auto _ : state) benchmark::DoNotOptimize(audit_trees(code, trees, exec_of(state)));
  state.SetLabel(exec_of(state) == Exec::kSerial ? "serial" : "parallel");
}
BENCHMARK(BM_ConverseAudit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CapacityProperties(benchmark::State& state) {
  const auto code = build_sldc(3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(check_capacity_properties(code, exec_of(state)));
  state.SetLabel(exec_of(state) == Exec::kSerial ? "serial" : "parallel");
}
BENCHMARK(BM_CapacityProperties)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MinDistance(benchmark::State& state) {
  const auto code = build_sldc(4, 2);
  DistanceOptions opt;
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(min_distance(code, opt));
  state.SetLabel(exec_of(state) == Exec::kSerial ? "serial" : "parallel");
}
BENCHMARK(BM_MinDistance)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Corruption(benchmark::State& state) {
  const auto code = build_sldc(4, 2);
  CorruptionOptions opt;
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(corruption_trial(code, Rational(3, 16), opt));
  state.SetLabel(exec_of(state) == Exec::kSerial ? "serial" : "parallel");
}
BENCHMARK(BM_Corruption)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
