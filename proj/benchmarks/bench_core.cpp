#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rechems/ess.hpp"
#include "rechems/fuzzy.hpp"
#include "rechems/genetic.hpp"
#include "rechems/hems.hpp"
#include "rechems/objectives.hpp"
#include "rechems/synthetic.hpp"

using namespace rechems;

namespace {

FisGenome random_genome(std::mt19937_64& rng) {
  const auto lo = FisGenome::lower_bounds();
  const auto hi = FisGenome::upper_bounds();
  FisGenome g;
  for (std::size_t j = 0; j < FisGenome::kSize; ++j) {
    g.genes[j] = std::uniform_real_distribution<double>(lo[j], hi[j])(rng);
  }
  return g;
}

void BM_WearCost(benchmark::State& state) {
  const EssParams e;
  double s0 = 0.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wear_cost(s0, s0 + 0.05, 1.0, kSlotHours, e));
    s0 = s0 > 0.8 ? 0.2 : s0 + 0.001;
  }
}
BENCHMARK(BM_WearCost);

void BM_FisInfer(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const FisModel m = decode(random_genome(rng));
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.infer(x));
    x = x > 0.99 ? 0.0 : x + 0.0137;
  }
}
BENCHMARK(BM_FisInfer);

void BM_Step(benchmark::State& state) {
  const auto nodes = static_cast<std::size_t>(state.range(0));
  RecConfig cfg;
  for (std::size_t i = 0; i < nodes; ++i) cfg.nodes.push_back(NodeConfig{"n" + std::to_string(i), {}, 3.0, 6000.0, 0.1, 0.5});
  std::mt19937_64 rng(3);
  const Policy p = Policy::fis(decode(random_genome(rng)));
  std::vector<double> soe(nodes, 0.5), gen(nodes, 2.0), load(nodes, -1.0);
  std::vector<ForecastPair> fc(nodes, ForecastPair{1.5, -1.2});
  std::size_t slot = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(step(soe, fc, gen, load, slot++ % kSlotsPerDay, p, cfg));
  }
}
BENCHMARK(BM_Step)->Arg(7)->Arg(50);

void BM_DayRun(benchmark::State& state) {
  const SyntheticCommunity syn = generate_synthetic(SyntheticOptions{});
  const CommunityData data = syn.data();
  std::mt19937_64 rng(5);
  const Policy p = Policy::fis(decode(random_genome(rng)));
  RunOptions opt;
  opt.slots = kSlotsPerDay;
  opt.mode = SimulationMode::offline;
  for (auto _ : state) benchmark::DoNotOptimize(run(data, p, syn.config, opt).total_objective);
}
BENCHMARK(BM_DayRun)->Unit(benchmark::kMillisecond);

void BM_GaRastrigin(benchmark::State& state) {
  const ga::BenchmarkProblem p = ga::benchmark_problem("rastrigin");
  ga::GaConfig cfg;
  cfg.lower.assign(2, p.lower);
  cfg.upper.assign(2, p.upper);
  for (auto _ : state) benchmark::DoNotOptimize(ga::evolve(p.objective, cfg).best.fitness);
}
BENCHMARK(BM_GaRastrigin)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
