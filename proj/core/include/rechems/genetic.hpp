#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace rechems::ga {

using Rng = std::mt19937_64;
using Genes = std::vector<double>;
/// Fitness to minimize. Must be pure: it may be called concurrently.
using FitnessFn = std::function<double(std::span<const double>)>;

enum class CrossoverMix {
  per_gene,  // one mixing coefficient drawn per gene
  scalar,    // one coefficient per parent pair
};

enum class Selection {
  tournament,
  /// Stochastic universal sampling over rank-scaled fitness (weight 1/sqrt(rank)).
  rank_sus,
};

/// Which non-elite children receive uniform mutation.
enum class MutationScope {
  clones_only,  // crossover children are kept as bred; cloned parents are mutated
  all_children,
};

struct GaConfig {
  std::size_t population = 100;
  double crossover_fraction = 0.7;
  double mutation_probability = 0.5;  // per gene
  std::size_t max_generations = 50;
  std::size_t elite_count = 5;
  Selection selection = Selection::rank_sus;
  std::size_t tournament_size = 2;
  CrossoverMix crossover_mix = CrossoverMix::per_gene;
  MutationScope mutation_scope = MutationScope::clones_only;
  std::vector<double> lower;
  std::vector<double> upper;
  std::uint64_t seed = 1;
  /// Evaluate each generation's fitness calls in parallel.
  bool parallel = true;
  /// Optional individuals placed in the initial population (clamped to bounds).
  std::vector<Genes> initial_individuals;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

struct Individual {
  Genes genes;
  double fitness = 0.0;
};

struct GenerationStats {
  std::size_t generation = 0;
  double best = 0.0;
  double mean = 0.0;
};

struct EvolutionResult {
  Individual best;
  std::vector<GenerationStats> history;  // entry 0 is the initial population
  std::size_t evaluations = 0;
};

/// Children r*a + (1-r)*b and (1-r)*a + r*b with r ~ U[0, 1].
[[nodiscard]] std::pair<Genes, Genes> convex_crossover(std::span<const double> a,
                                                       std::span<const double> b, Rng& rng,
                                                       CrossoverMix mix = CrossoverMix::per_gene);

/// Children for an explicit mixing coefficient per gene.
[[nodiscard]] std::pair<Genes, Genes> convex_crossover_with(std::span<const double> a,
                                                            std::span<const double> b,
                                                            std::span<const double> r);

/// Redraws each gene from U[lower_i, upper_i] with the given probability.
/// Returns the number of genes redrawn.
std::size_t uniform_mutation(Genes& genes, double probability, std::span<const double> lower,
                             std::span<const double> upper, Rng& rng);

/// Generational GA with elitist replacement. The crossover fraction of the
/// non-elite slots is bred by convex crossover; the remaining slots are
/// selected parents passed through per-gene uniform mutation (or, with
/// MutationScope::all_children, every non-elite child is mutated).
/// A fitness exception aborts the run and propagates.
[[nodiscard]] EvolutionResult evolve(const FitnessFn& fitness, const GaConfig& cfg);

}  // namespace rechems::ga
