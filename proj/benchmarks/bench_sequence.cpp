// Garner against Quillen on the same inputs, plus the one-step and law
// kernels they are built from.

#include <benchmark/benchmark.h>

#include "nwfs/catalog.hpp"
#include "nwfs/laws.hpp"
#include "nwfs/lifting.hpp"

namespace {

using namespace nwfs;

GeneratingSet gens(const char* key) { return std::get<GeneratingSet>(catalog_get(key).payload); }

ArrowObj set_arrow(std::size_t from, std::size_t to) {
  std::vector<Element> v(from);
  for (Element x = 0; x < from; ++x) v[x] = x % to;
  const FinCategory t = FinCategory::terminal();
  return ArrowObj{PresheafMap(Presheaf::finite_set(t, from), Presheaf::finite_set(t, to), {v}), {}};
}

ArrowObj path_to_point(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return ArrowObj{terminal_map(reflexive_graph(n, edges)), {}};
}

// Arg: number of successor steps; Quillen stage n has n cells on {empty -> 1}.
void BM_PointQuillen(benchmark::State& state) {
  const GeneratingSet j = gens("point");
  const OrdinalBudget budget{static_cast<std::size_t>(state.range(0)), 0};
  for (auto _ : state) benchmark::DoNotOptimize(run_quillen(j, j.members[0], budget));
}
BENCHMARK(BM_PointQuillen)->Arg(4)->Arg(16)->Arg(32);

void BM_PointGarner(benchmark::State& state) {
  const GeneratingSet j = gens("point");
  const OrdinalBudget budget{static_cast<std::size_t>(state.range(0)), 0};
  for (auto _ : state) benchmark::DoNotOptimize(run_garner(j, j.members[0], budget, {true}));
}
BENCHMARK(BM_PointGarner)->Arg(4)->Arg(16)->Arg(32);

// Arg: |C| for C -> 3; Garner converges by stage 2.
void BM_CographGarner(benchmark::State& state) {
  const GeneratingSet j = gens("point");
  const ArrowObj g = set_arrow(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(run_garner(j, g));
}
BENCHMARK(BM_CographGarner)->Arg(2)->Arg(8)->Arg(32);

// Arg: successor steps on a 3-vertex path; Quillen stages grow by a factor
// of three per step, Garner stages by about two.
void BM_HornsGarner(benchmark::State& state) {
  const GeneratingSet j = gens("horns≤1");
  const ArrowObj g = path_to_point(3);
  const OrdinalBudget budget{static_cast<std::size_t>(state.range(0)), 0};
  for (auto _ : state) benchmark::DoNotOptimize(run_garner(j, g, budget));
}
BENCHMARK(BM_HornsGarner)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_HornsQuillen(benchmark::State& state) {
  const GeneratingSet j = gens("horns≤1");
  const ArrowObj g = path_to_point(3);
  const OrdinalBudget budget{static_cast<std::size_t>(state.range(0)), 0};
  for (auto _ : state) benchmark::DoNotOptimize(run_quillen(j, g, budget));
}
BENCHMARK(BM_HornsQuillen)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_OneStepHorns(benchmark::State& state) {
  const GeneratingSet j = gens("horns≤1");
  const ArrowObj g = path_to_point(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_onestep(j, g));
}
BENCHMARK(BM_OneStepHorns)->DenseRange(1, 4);

// Arg: |C| for C -> 2 under {empty -> 1}; 2^|C| fibre choices.
void BM_Bijection(benchmark::State& state) {
  const GeneratingSet j = gens("point");
  const ArrowObj g = set_arrow(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(check_bijection(j, g));
}
BENCHMARK(BM_Bijection)->DenseRange(2, 6, 2);

void BM_Laws(benchmark::State& state) {
  const auto sample = law_sample(static_cast<std::size_t>(state.range(0)), 7);
  const std::vector<FactorizationRule> rules{graph_rule(), cograph_rule()};
  for (auto _ : state) benchmark::DoNotOptimize(check_laws(rules, sample));
  state.counters["arrows"] = static_cast<double>(sample.size());
}
BENCHMARK(BM_Laws)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
