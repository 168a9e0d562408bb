#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rechems/genetic.hpp"
#include "rechems/objectives.hpp"

using namespace rechems;
using namespace rechems::ga;

namespace {

GaConfig sphere_config(std::uint64_t seed) {
  GaConfig c;
  const BenchmarkProblem p = benchmark_problem("sphere");
  c.lower.assign(2, p.lower);
  c.upper.assign(2, p.upper);
  c.seed = seed;
  return c;
}

}  // namespace

TEST(Crossover, IdenticalParents) {
  Rng rng(1);
  Genes a = {0.1, 0.5, 0.9};
  auto [c1, c2] = convex_crossover(a, a, rng);
  EXPECT_EQ(c1, a);
  EXPECT_EQ(c2, a);
}

TEST(Crossover, ZeroMixSwapsParents) {
  Genes a = {0.1, 0.5, 0.9}, b = {0.7, 0.2, 0.3};
  std::vector<double> r(3, 0.0);
  auto [c1, c2] = convex_crossover_with(a, b, r);
  EXPECT_EQ(c1, b);
  EXPECT_EQ(c2, a);
}

TEST(Crossover, ChildrenStayBetweenParents) {
  Rng rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t outside = 0;
  for (int t = 0; t < 10000; ++t) {
    Genes a(30), b(30);
    for (int i = 0; i < 30; ++i) {
      a[i] = u(rng);
      b[i] = u(rng);
    }
    const CrossoverMix mix = t % 2 ? CrossoverMix::scalar : CrossoverMix::per_gene;
    auto [c1, c2] = convex_crossover(a, b, rng, mix);
    for (int i = 0; i < 30; ++i) {
      const double lo = std::min(a[i], b[i]), hi = std::max(a[i], b[i]);
      if (c1[i] < lo || c1[i] > hi || c2[i] < lo || c2[i] > hi) ++outside;
    }
  }
  EXPECT_EQ(outside, 0u);
}

TEST(Mutation, ZeroProbabilityIsIdentity) {
  Rng rng(3);
  Genes g = {0.1, 0.2, 0.3};
  const Genes before = g;
  std::vector<double> lo(3, 0.0), hi(3, 1.0);
  EXPECT_EQ(uniform_mutation(g, 0.0, lo, hi, rng), 0u);
  EXPECT_EQ(g, before);
}

TEST(Mutation, FullProbabilityRedrawsInBounds) {
  Rng rng(4);
  Genes g(30, 5.0);
  std::vector<double> lo(30, -1.0), hi(30, 2.0);
  EXPECT_EQ(uniform_mutation(g, 1.0, lo, hi, rng), 30u);
  for (double v : g) {
    EXPECT_GE(v, -1.0);
    EXPECT_LE(v, 2.0);
  }
}

TEST(Mutation, HalfProbabilityChangesHalf) {
  Rng rng(5);
  std::vector<double> lo(30, 0.0), hi(30, 1.0);
  double changed = 0.0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    Genes g(30, 0.5);
    uniform_mutation(g, 0.5, lo, hi, rng);
    for (double v : g) changed += v != 0.5 ? 1.0 : 0.0;
  }
  EXPECT_NEAR(changed / (30.0 * trials), 0.5, 0.02);
}

TEST(Evolve, ConstantFitnessKeepsAnInitialIndividual) {
  GaConfig c = sphere_config(7);
  c.max_generations = 10;
  const Genes seed = {1.25, -2.5};
  c.initial_individuals = {seed};
  const EvolutionResult r = evolve([](std::span<const double>) { return 3.0; }, c);
  EXPECT_EQ(r.best.genes, seed);
  for (const GenerationStats& s : r.history) {
    EXPECT_EQ(s.best, 3.0);
    EXPECT_EQ(s.mean, 3.0);
  }
}

TEST(Evolve, SphereTenSeeds) {
  double total = 0.0;
  for (std::uint64_t s = 1; s <= 10; ++s) total += evolve(sphere, sphere_config(s)).best.fitness;
  EXPECT_LE(total / 10.0, 1e-4);
}

TEST(Evolve, BestIsMonotone) {
  for (const std::string& name : benchmark_names()) {
    const BenchmarkProblem p = benchmark_problem(name);
    GaConfig c;
    c.lower.assign(2, p.lower);
    c.upper.assign(2, p.upper);
    c.seed = 9;
    const EvolutionResult r = evolve(p.objective, c);
    ASSERT_EQ(r.history.size(), c.max_generations + 1);
    for (std::size_t g = 1; g < r.history.size(); ++g) {
      EXPECT_LE(r.history[g].best, r.history[g - 1].best) << name;
    }
    EXPECT_EQ(r.history.back().best, r.best.fitness);
  }
}

TEST(Evolve, DeterministicAcrossParallelism) {
  GaConfig c = sphere_config(11);
  const EvolutionResult a = evolve(rastrigin, c);
  const EvolutionResult b = evolve(rastrigin, c);
  c.parallel = false;
  const EvolutionResult s = evolve(rastrigin, c);
  EXPECT_EQ(a.best.genes, b.best.genes);
  EXPECT_EQ(a.best.genes, s.best.genes);
  ASSERT_EQ(a.history.size(), s.history.size());
  for (std::size_t g = 0; g < a.history.size(); ++g) {
    EXPECT_EQ(a.history[g].best, s.history[g].best);
    EXPECT_EQ(a.history[g].mean, s.history[g].mean);
  }
}

TEST(Evolve, GenesStayInBounds) {
  GaConfig c;
  c.lower = {-1.0, 0.0, 2.0};
  c.upper = {1.0, 0.5, 3.0};
  c.max_generations = 20;
  c.population = 30;
  c.initial_individuals = {{-5.0, 4.0, 9.0}};
  c.mutation_scope = MutationScope::all_children;
  c.selection = Selection::tournament;
  std::size_t outside = 0;
  const FitnessFn f = [&](std::span<const double> g) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] < c.lower[i] || g[i] > c.upper[i]) ++outside;
    }
    return g[0] * g[0] + g[1] + g[2];
  };
  c.parallel = false;
  (void)evolve(f, c);
  EXPECT_EQ(outside, 0u);
}

TEST(Evolve, FitnessExceptionPropagates) {
  GaConfig c = sphere_config(1);
  EXPECT_THROW((void)evolve([](std::span<const double>) -> double { throw std::runtime_error("boom"); }, c),
               std::runtime_error);
}

TEST(Evolve, ValidateRejectsInconsistentConfig) {
  GaConfig c = sphere_config(1);
  c.elite_count = c.population;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = sphere_config(1);
  c.upper.pop_back();
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = sphere_config(1);
  c.crossover_fraction = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Objectives, KnownOptima) {
  const std::vector<double> zero = {0.0, 0.0};
  EXPECT_EQ(sphere(zero), 0.0);
  EXPECT_NEAR(rastrigin(zero), 0.0, 1e-12);
  EXPECT_NEAR(griewank(zero), 0.0, 1e-12);
  const std::vector<double> one = {1.0, 1.0};
  EXPECT_EQ(rosenbrock(one), 0.0);
  for (const std::string& name : benchmark_names()) {
    const BenchmarkProblem p = benchmark_problem(name);
    const std::vector<double> x(2, p.optimum_coordinate);
    EXPECT_NEAR(p.objective(x), p.optimum_value, 1e-4) << name;
  }
  EXPECT_EQ(benchmark_names().size(), 5u);
  EXPECT_THROW((void)benchmark_problem("ackley"), std::invalid_argument);
}
