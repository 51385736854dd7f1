// Serial reference vs OpenMP kernels. Arg 0 runs Execution::Serial, arg 1
// Execution::Parallel. CSV output:
//   hyperpin_bench --benchmark_out=bench.csv --benchmark_out_format=csv

#include <numeric>

#include <benchmark/benchmark.h>

#include "hyperpin/hypergraph.hpp"
#include "hyperpin/msf.hpp"
#include "hyperpin/select.hpp"
#include "hyperpin/simulate.hpp"

namespace {

using namespace hyperpin;

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

DirectedHypergraph er_scc(double sigma) {
  ErParams params;
  params.p = 0.01;
  params.max_order = 4;
  params.sigma = sigma;
  return giant_scc(er_hypergraph(params, 7)).sub;
}

std::vector<NodeId> iota_nodes(int n) {
  std::vector<NodeId> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

void BM_ScoreCandidates(benchmark::State& state) {
  const auto graph = er_scc(1.0);
  const PinningProblem problem(graph, PinningConfig::singletons(iota_nodes(graph.size())), MasterStability::consensus());
  for (auto _ : state) benchmark::DoNotOptimize(score_candidates(problem, {}, mode(state)));
  state.SetLabel(mode(state) == Execution::Serial ? "serial" : "parallel");
}
BENCHMARK(BM_ScoreCandidates)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PartitionSweep(benchmark::State& state) {
  const auto graph = nearest_neighbor_3body(8);
  const auto msf = MasterStability::consensus();
  for (auto _ : state) {
    if (state.range(0)) {
      benchmark::DoNotOptimize(partition_sweep(graph, msf, Execution::Parallel));
    } else {
      benchmark::DoNotOptimize(partition_sweep_reference(graph, msf));
    }
  }
  state.SetLabel(state.range(0) ? "parallel" : "serial reference");
}
BENCHMARK(BM_PartitionSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MsfGrid(benchmark::State& state) {
  const auto model = lorenz_arctan_model();
  const LyapunovSettings settings{10.0, 60.0, 1.0, 1e-3};
  const MsfGridSpec grid{0.0, 4.0, -1.0, 1.0, 3, 3};
  for (auto _ : state) benchmark::DoNotOptimize(msf_grid(model, grid, settings, mode(state)));
  state.SetLabel(mode(state) == Execution::Serial ? "serial" : "parallel");
}
BENCHMARK(BM_MsfGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_NetworkRhs(benchmark::State& state) {
  const auto graph = er_scc(30.0);
  const auto model = lorenz_arctan_model();
  std::optional<PinningConfig> pins = PinningConfig::singletons(std::vector<NodeId>{0, 1, 2}, 60.0);
  const NetworkRhs rhs(graph, pins, model);
  Eigen::VectorXd s = Eigen::VectorXd::LinSpaced(rhs.state_size(), -5.0, 5.0), ds(rhs.state_size());
  for (auto _ : state) {
    rhs(s, ds, mode(state));
    benchmark::DoNotOptimize(ds.data());
  }
  state.SetLabel(mode(state) == Execution::Serial ? "serial (by edge)" : "parallel (by node)");
}
BENCHMARK(BM_NetworkRhs)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
