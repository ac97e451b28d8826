#include <benchmark/benchmark.h>

#include "causalnet/bell.h"
#include "causalnet/distribution.h"
#include "causalnet/graphoid.h"
#include "causalnet/independence.h"

namespace causalnet {
namespace {

void BM_RandomCompatibleBell(benchmark::State& state) {
  const Dag g = BellDag(static_cast<int>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(RandomCompatible(g, seed++).size());
}
BENCHMARK(BM_RandomCompatibleBell)->Arg(4)->Arg(16)->Arg(64);

void BM_CiHolds(benchmark::State& state) {
  const JointTable p = RandomCompatible(BellDag(16), 1);
  const VariableQuery q = MakeVariableQuery(p, {"A"}, {"B", "Y"}, {"X", "Lambda"});
  for (auto _ : state) benchmark::DoNotOptimize(CiHolds(p, q, 1e-9).holds);
}
BENCHMARK(BM_CiHolds);

void BM_CompatibleBell(benchmark::State& state) {
  const Dag g = BellDag(16);
  const JointTable p = RandomCompatible(g, 1);
  for (auto _ : state) benchmark::DoNotOptimize(Compatible(p, g, 1e-9).pass());
}
BENCHMARK(BM_CompatibleBell);

void BM_GraphoidAudit(benchmark::State& state) {
  const JointTable p = RandomCompatible(
      ParseDag("node A 2\nnode B 2\nnode C 2\nnode D 2\nedge A -> B\nedge B -> C\n"), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(GraphoidAudit(p, 1e-9, 100, 5).pass());
  }
}
BENCHMARK(BM_GraphoidAudit);

}  // namespace
}  // namespace causalnet
