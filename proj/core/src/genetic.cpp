#include "rechems/genetic.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <execution>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace rechems::ga {

void GaConfig::validate() const {
  if (population < 2) throw std::invalid_argument("ga: population must be >= 2");
  if (elite_count < 1 || elite_count >= population) {
    throw std::invalid_argument("ga: elite_count must be in [1, population)");
  }
  if (!(crossover_fraction >= 0.0 && crossover_fraction <= 1.0)) {
    throw std::invalid_argument("ga: crossover_fraction must be in [0, 1]");
  }
  if (!(mutation_probability >= 0.0 && mutation_probability <= 1.0)) {
    throw std::invalid_argument("ga: mutation_probability must be in [0, 1]");
  }
  if (tournament_size < 1) throw std::invalid_argument("ga: tournament_size must be >= 1");
  if (lower.empty() || lower.size() != upper.size()) {
    throw std::invalid_argument("ga: lower and upper bounds must be non-empty and equally sized");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || lower[i] > upper[i]) {
      throw std::invalid_argument("ga: invalid bounds for gene " + std::to_string(i));
    }
  }
  for (const Genes& g : initial_individuals) {
    if (g.size() != lower.size()) {
      throw std::invalid_argument("ga: initial individual has the wrong number of genes");
    }
  }
}

std::pair<Genes, Genes> convex_crossover_with(std::span<const double> a, std::span<const double> b,
                                              std::span<const double> r) {
  if (a.size() != b.size() || a.size() != r.size()) {
    throw std::invalid_argument("convex_crossover: size mismatch");
  }
  Genes c1(a.size());
  Genes c2(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    c1[i] = r[i] * a[i] + (1.0 - r[i]) * b[i];
    c2[i] = (1.0 - r[i]) * a[i] + r[i] * b[i];
    // Rounding can step a hair outside the parents' interval.
    const auto [lo, hi] = std::minmax(a[i], b[i]);
    c1[i] = std::clamp(c1[i], lo, hi);
    c2[i] = std::clamp(c2[i], lo, hi);
  }
  return {std::move(c1), std::move(c2)};
}

std::pair<Genes, Genes> convex_crossover(std::span<const double> a, std::span<const double> b,
                                         Rng& rng, CrossoverMix mix) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> r(a.size());
  if (mix == CrossoverMix::scalar) {
    std::fill(r.begin(), r.end(), unit(rng));
  } else {
    for (double& v : r) v = unit(rng);
  }
  return convex_crossover_with(a, b, r);
}

std::size_t uniform_mutation(Genes& genes, double probability, std::span<const double> lower,
                             std::span<const double> upper, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < genes.size(); ++i) {
    if (unit(rng) < probability) {
      genes[i] = std::uniform_real_distribution<double>(lower[i], upper[i])(rng);
      ++changed;
    }
  }
  return changed;
}

namespace {

void evaluate(std::vector<Individual>& pop, std::size_t from, const FitnessFn& fitness,
              bool parallel) {
  std::vector<std::size_t> idx(pop.size() - from);
  std::iota(idx.begin(), idx.end(), from);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto eval_one = [&](std::size_t i) {
    try {
      pop[i].fitness = fitness(pop[i].genes);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (parallel) {
    std::for_each(std::execution::par, idx.begin(), idx.end(), eval_one);
  } else {
    std::for_each(idx.begin(), idx.end(), eval_one);
  }
  if (failure) std::rethrow_exception(failure);
}

GenerationStats stats_of(const std::vector<Individual>& pop, std::size_t generation) {
  GenerationStats s{generation, std::numeric_limits<double>::infinity(), 0.0};
  for (const Individual& ind : pop) {
    s.best = std::min(s.best, ind.fitness);
    s.mean += ind.fitness;
  }
  s.mean /= static_cast<double>(pop.size());
  return s;
}

const Individual& tournament(const std::vector<Individual>& pop, std::size_t size, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
  const Individual* winner = &pop[pick(rng)];
  for (std::size_t k = 1; k < size; ++k) {
    const Individual& challenger = pop[pick(rng)];
    if (challenger.fitness < winner->fitness) winner = &challenger;
  }
  return *winner;
}

// Parent pool for one generation; `pop` is sorted best first.
std::vector<std::size_t> rank_sus_pool(std::size_t pop_size, std::size_t count, Rng& rng) {
  std::vector<double> cumulative(pop_size);
  double total = 0.0;
  for (std::size_t i = 0; i < pop_size; ++i) {
    total += 1.0 / std::sqrt(static_cast<double>(i + 1));
    cumulative[i] = total;
  }
  const double step = total / static_cast<double>(count);
  double pointer = std::uniform_real_distribution<double>(0.0, step)(rng);
  std::vector<std::size_t> pool;
  pool.reserve(count);
  std::size_t i = 0;
  for (std::size_t k = 0; k < count; ++k) {
    while (i + 1 < pop_size && cumulative[i] < pointer) ++i;
    pool.push_back(i);
    pointer += step;
  }
  std::shuffle(pool.begin(), pool.end(), rng);
  return pool;
}

}  // namespace

EvolutionResult evolve(const FitnessFn& fitness, const GaConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const std::size_t dim = cfg.lower.size();

  std::vector<Individual> pop(cfg.population);
  for (std::size_t i = 0; i < cfg.population; ++i) {
    Genes g(dim);
    if (i < cfg.initial_individuals.size()) {
      for (std::size_t j = 0; j < dim; ++j) {
        g[j] = std::clamp(cfg.initial_individuals[i][j], cfg.lower[j], cfg.upper[j]);
      }
    } else {
      for (std::size_t j = 0; j < dim; ++j) {
        g[j] = std::uniform_real_distribution<double>(cfg.lower[j], cfg.upper[j])(rng);
      }
    }
    pop[i].genes = std::move(g);
  }

  EvolutionResult result;
  evaluate(pop, 0, fitness, cfg.parallel);
  result.evaluations = pop.size();
  result.history.push_back(stats_of(pop, 0));

  auto by_fitness = [](const Individual& x, const Individual& y) { return x.fitness < y.fitness; };
  result.best = *std::min_element(pop.begin(), pop.end(), by_fitness);

  const std::size_t offspring = cfg.population - cfg.elite_count;
  const auto crossover_children =
      static_cast<std::size_t>(std::lround(cfg.crossover_fraction * static_cast<double>(offspring)));

  for (std::size_t gen = 1; gen <= cfg.max_generations; ++gen) {
    std::stable_sort(pop.begin(), pop.end(), by_fitness);

    std::vector<Individual> next;
    next.reserve(cfg.population);
    for (std::size_t e = 0; e < cfg.elite_count; ++e) next.push_back(pop[e]);

    std::vector<std::size_t> pool;
    std::size_t pool_pos = 0;
    if (cfg.selection == Selection::rank_sus) {
      pool = rank_sus_pool(pop.size(), 2 * crossover_children + offspring, rng);
    }
    auto select = [&]() -> const Individual& {
      if (cfg.selection == Selection::rank_sus) return pop[pool[pool_pos++]];
      return tournament(pop, cfg.tournament_size, rng);
    };

    while (next.size() < cfg.elite_count + crossover_children) {
      const Individual& a = select();
      const Individual& b = select();
      auto [c1, c2] = convex_crossover(a.genes, b.genes, rng, cfg.crossover_mix);
      next.push_back({std::move(c1), 0.0});
      if (next.size() < cfg.elite_count + crossover_children) next.push_back({std::move(c2), 0.0});
    }
    while (next.size() < cfg.population) {
      next.push_back({select().genes, 0.0});
    }
    const std::size_t first_mutated = cfg.mutation_scope == MutationScope::all_children
                                          ? cfg.elite_count
                                          : cfg.elite_count + crossover_children;
    for (std::size_t i = first_mutated; i < next.size(); ++i) {
      uniform_mutation(next[i].genes, cfg.mutation_probability, cfg.lower, cfg.upper, rng);
    }

    evaluate(next, cfg.elite_count, fitness, cfg.parallel);
    result.evaluations += offspring;
    pop = std::move(next);

    const auto best_it = std::min_element(pop.begin(), pop.end(), by_fitness);
    if (best_it->fitness < result.best.fitness) result.best = *best_it;
    result.history.push_back(stats_of(pop, gen));
  }
  return result;
}

}  // namespace rechems::ga
