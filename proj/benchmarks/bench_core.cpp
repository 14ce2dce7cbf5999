#include <benchmark/benchmark.h>

#include "ikep/balancing.hpp"
#include "ikep/config.hpp"
#include "ikep/game.hpp"
#include "ikep/matching.hpp"
#include "ikep/simulator.hpp"
#include "ikep/solutions.hpp"

using namespace ikep;

namespace {

// Round-1 graph of a paper-scale instance (pool 2000, equal sizes).
CompatibilityGraph first_round(int n) {
  SimulationConfig cfg;
  cfg.pool_size = 2000;
  const Instance inst = make_instance(cfg, SizeSetting::kEqual, n, 0);
  return round_graph(inst.graph, initial_pool(inst.graph));
}

void BM_GenerateGame(benchmark::State& state) {
  const CompatibilityGraph g = first_round(static_cast<int>(state.range(0)));
  GameOptions opt;
  opt.max_countries = kHardMaxCountries;
  for (auto _ : state) benchmark::DoNotOptimize(generate_game(g, opt));
}
BENCHMARK(BM_GenerateGame)->DenseRange(8, 15)->Unit(benchmark::kMillisecond);

void BM_MaximumMatching(benchmark::State& state) {
  const CompatibilityGraph g = first_round(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(maximum_matching(g));
}
BENCHMARK(BM_MaximumMatching)->Arg(4)->Arg(10)->Unit(benchmark::kMicrosecond);

struct SelectionInput {
  CompatibilityGraph g;
  std::vector<double> x;
};

SelectionInput selection_input(int n) {
  SelectionInput in{first_round(n), {}};
  in.x = shapley(generate_game(in.g)).scaled(2).values;
  return in;
}

void BM_SelectD1(benchmark::State& state) {
  const SelectionInput in = selection_input(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    IntervalMatcher matcher(in.g);
    benchmark::DoNotOptimize(min_d1_matching(matcher, in.x));
  }
}
BENCHMARK(BM_SelectD1)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_SelectLexmin(benchmark::State& state) {
  const SelectionInput in = selection_input(static_cast<int>(state.range(0)));
  const auto method = state.range(1) == 0 ? LexminMethod::kGreedy : LexminMethod::kLevels;
  for (auto _ : state) {
    IntervalMatcher matcher(in.g);
    benchmark::DoNotOptimize(lexmin_matching(matcher, in.x, method));
  }
}
BENCHMARK(BM_SelectLexmin)->ArgsProduct({{4, 8, 12}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Concept(benchmark::State& state) {
  const CharacteristicFunction v = generate_game(first_round(static_cast<int>(state.range(0))));
  const auto k = static_cast<Concept>(state.range(1));
  state.SetLabel(std::string(to_string(k)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_concept(k, v));
}
BENCHMARK(BM_Concept)->ArgsProduct({{6, 10}, {0, 1, 2, 3, 4, 5}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
