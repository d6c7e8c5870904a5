#include <benchmark/benchmark.h>

#include "dwrosn/las.hpp"
#include "dwrosn/rwa.hpp"
#include "dwrosn/topology.hpp"

using namespace dwrosn;

namespace {

const ConstellationSpec& spec() {
  static const ConstellationSpec s = ConstellationSpec::reference();
  return s;
}

const NodeSet& nodes() {
  static const NodeSet n = NodeSet::uniform(spec(), 5, 6);
  return n;
}

const PotentialLinkMatrix& potential() {
  static const PotentialLinkMatrix p = build_potential_matrix(spec(), nodes(), 0.0, 2000.0, 1.0);
  return p;
}

const TopologySnapshot& topology() {
  static const TopologySnapshot t = [] {
    Rng rng(1);
    return peim_assign(potential(), nodes(), rng);
  }();
  return t;
}

const SquareMatrix<double>& delays() {
  static const SquareMatrix<double> d = link_delay_ms(topology(), spec(), 0.0);
  return d;
}

void BM_Positions(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(positions_at(spec(), t));
    t += 1.0;
  }
}
BENCHMARK(BM_Positions);

void BM_VisibilityMatrix(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(visibility_matrix(spec(), nodes(), 0.0));
}
BENCHMARK(BM_VisibilityMatrix)->Unit(benchmark::kMicrosecond);

void BM_PotentialMatrix(benchmark::State& state) {
  const double step = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_potential_matrix(spec(), nodes(), 0.0, 2000.0, step));
}
BENCHMARK(BM_PotentialMatrix)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

// Half of the assigned edges, so the sweep still has candidates to score.
void BM_Importance(benchmark::State& state) {
  TopologySnapshot snap(nodes().degree, 0.0, 2000.0);
  const auto edges = topology().edge_list();
  for (std::size_t e = 0; e < edges.size() / 2; ++e) snap.add_edge(edges[e][0], edges[e][1]);
  for (auto _ : state) benchmark::DoNotOptimize(compute_importance(snap, potential().links));
}
BENCHMARK(BM_Importance)->Unit(benchmark::kMillisecond);

void BM_Assign(benchmark::State& state) {
  const Scheme scheme = static_cast<Scheme>(state.range(0));
  Rng rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(assign(scheme, potential(), nodes(), rng));
  state.SetLabel(std::string(scheme_name(scheme)));
}
BENCHMARK(BM_Assign)
    ->Arg(static_cast<int>(Scheme::kPeim))
    ->Arg(static_cast<int>(Scheme::kAct))
    ->Arg(static_cast<int>(Scheme::kGreedy))
    ->Unit(benchmark::kMillisecond);

void BM_PathTable(benchmark::State& state) {
  const int max_hops = state.range(0) == 0 ? kUnlimitedHops : static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_path_table(topology(), delays(), max_hops, 16));
}
BENCHMARK(BM_PathTable)->Arg(3)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_FirstFitRwa(benchmark::State& state) {
  const PathTable table = build_path_table(topology(), delays(), kUnlimitedHops, 16);
  RwaOptions options;
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(rwa_run(table, topology(), delays(), options, rng));
}
BENCHMARK(BM_FirstFitRwa)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
