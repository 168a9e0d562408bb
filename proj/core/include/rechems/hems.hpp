#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rechems/community.hpp"
#include "rechems/config.hpp"
#include "rechems/forecasting.hpp"
#include "rechems/fuzzy.hpp"
#include "rechems/genetic.hpp"
#include "rechems/results.hpp"
#include "rechems/units.hpp"

namespace rechems {

enum class SimulationMode { auto_consumption, offline, online };

[[nodiscard]] const char* to_string(SimulationMode mode);
/// Accepts "auto", "auto_consumption", "offline", "online".
[[nodiscard]] SimulationMode simulation_mode_from_string(std::string_view text);

/// Per-node, per-slot alpha values. Entry (node, slot) lives at
/// node * slots + (slot - first_slot).
struct AlphaSchedule {
  std::size_t first_slot = 0;
  std::size_t nodes = 0;
  std::size_t slots = 0;
  std::vector<double> values;

  AlphaSchedule() = default;
  AlphaSchedule(std::size_t first_slot, std::size_t nodes, std::size_t slots, double fill = 1.0);

  [[nodiscard]] double& at(std::size_t node, std::size_t slot) {
    return values[node * slots + (slot - first_slot)];
  }
  [[nodiscard]] double at(std::size_t node, std::size_t slot) const {
    return values[node * slots + (slot - first_slot)];
  }
};

/// What the community controller does with the local decisions.
class Policy {
 public:
  /// Keep every node's own alpha = 1 decision.
  [[nodiscard]] static Policy self_consumption();
  /// One FIS shared by all nodes, fed with each node's projected SoE.
  [[nodiscard]] static Policy fis(std::shared_ptr<const FisModel> model);
  [[nodiscard]] static Policy fis(FisModel model);
  [[nodiscard]] static Policy constant(double alpha);
  [[nodiscard]] static Policy schedule(std::shared_ptr<const AlphaSchedule> alphas);
  [[nodiscard]] static Policy schedule(AlphaSchedule alphas);

  /// False only for self_consumption.
  [[nodiscard]] bool overrides() const { return !std::holds_alternative<SelfConsumption>(kind_); }
  [[nodiscard]] const FisModel* fis_model() const;
  [[nodiscard]] std::string describe() const;

  /// Alpha for `node` at `slot` given its projected SoE. Sets `fallback` when
  /// the FIS fired no rule.
  [[nodiscard]] double alpha(std::size_t node, std::size_t slot, double projected_soe,
                             bool& fallback) const;

 private:
  struct SelfConsumption {};
  struct Constant {
    double alpha;
  };
  using Kind = std::variant<SelfConsumption, std::shared_ptr<const FisModel>, Constant,
                            std::shared_ptr<const AlphaSchedule>>;
  explicit Policy(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

struct StepCounters {
  std::size_t node_slots = 0;
  /// Node-slots whose final flows were set by the controller's alpha.
  std::size_t hems_overrides = 0;
  std::size_t fis_fallbacks = 0;

  StepCounters& operator+=(const StepCounters& o);
};

struct StepResult {
  std::vector<double> soe;
  TimeslotResult result;
};

/// One slot of the hierarchical controller:
///  1. every node plans with alpha = 1 on its forecast, projecting its SoE;
///  2. the policy maps each projected SoE to alpha (skipped for self-consumption);
///  3. flows are dispatched from the pre-slot SoE on the actual powers with
///     that alpha, SoE advanced, wear charged and the slot settled.
/// Sharing is matched within the slot; run() handles hourly sharing.
[[nodiscard]] StepResult step(std::span<const double> soe, std::span<const ForecastPair> forecasts,
                              std::span<const double> actual_gen_kw,
                              std::span<const double> actual_load_kw, std::size_t slot,
                              const Policy& policy, const RecConfig& cfg, double dt_h = kSlotHours,
                              StepCounters* counters = nullptr);

struct RunOptions {
  SimulationMode mode = SimulationMode::offline;
  std::size_t start_slot = 0;
  std::size_t slots = kSlotsPerDay;
  /// Required in online mode; history before start_slot must cover its needs.
  const Forecaster* forecaster = nullptr;
  /// Overrides the configured initial SoE of every node.
  std::vector<double> initial_soe;
  /// Keep per-slot results. Totals are identical either way.
  bool record = true;
};

struct SimulationRun {
  SimulationMode mode = SimulationMode::offline;
  std::size_t start_slot = 0;
  std::size_t slots = 0;
  std::vector<TimeslotResult> results;
  CashFlow totals;
  double total_objective = 0.0;
  std::vector<double> final_soe;
  StepCounters counters;
  std::size_t forecast_clamps = 0;
  double wall_time_s = 0.0;
};

/// Simulates `opt.slots` slots from `opt.start_slot`. Auto-consumption
/// ignores `policy`; offline feeds the actual powers as forecasts; online asks
/// the forecaster for each slot with history up to the previous slot.
/// Throws std::invalid_argument on missing data or forecaster.
[[nodiscard]] SimulationRun run(const CommunityData& data, const Policy& policy,
                                const RecConfig& cfg, const RunOptions& opt);

/// Offline objective of `policy` over a window, without recording.
[[nodiscard]] double evaluate_objective(const CommunityData& data, const Policy& policy,
                                        const RecConfig& cfg, std::size_t start_slot,
                                        std::size_t slots);

struct TrainingWindow {
  std::size_t start_slot = 24;
  std::size_t slots = 48;
};

/// Empty when the window contains both a slot without community generation
/// and the generation peak of its day; otherwise a description of the gap.
[[nodiscard]] std::vector<std::string> validate_training_window(const CommunityData& data,
                                                                const TrainingWindow& window);

struct TrainingOptions {
  ga::GaConfig ga;  // bounds are filled in from the genome
  std::size_t repeats = 10;
  DecodeOptions decode;
};

struct TrainingRepeat {
  std::uint64_t seed = 0;
  FisGenome genome;
  double fitness = 0.0;
  std::vector<ga::GenerationStats> history;
  std::size_t evaluations = 0;
};

struct TrainingReport {
  FisGenome best_genome;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  double stddev_fitness = 0.0;  // population standard deviation over repeats
  std::vector<TrainingRepeat> repeats;
  std::vector<std::string> warnings;
};

/// Fitness of a genome is the offline objective of its decoded FIS over the
/// window. Repeat r runs the GA with seed opt.ga.seed + r.
[[nodiscard]] TrainingReport train_fis(const CommunityData& data, const TrainingWindow& window,
                                       const RecConfig& cfg, const TrainingOptions& opt);

struct BenchmarkOptions {
  ga::GaConfig ga;  // bounds are filled in: one gene per node-slot in [0, 1]
  /// Constant-alpha schedules added to the first population.
  std::vector<double> constant_seeds = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<AlphaSchedule> warm_starts;
  std::size_t max_sweeps = 50;
  double sweep_tolerance = 1e-6;     // EUR
  double golden_tolerance = 1e-4;    // width of the final alpha bracket
};

struct BenchmarkResult {
  AlphaSchedule alpha;
  double objective = 0.0;
  double stage1_objective = 0.0;
  std::size_t sweeps = 0;
  std::size_t evaluations = 0;
};

/// Direct perfect-foresight optimisation of the alpha matrix: a GA narrows the
/// search, then coordinate-wise golden-section descent refines each alpha
/// (endpoints 0 and 1 always tried) until a sweep gains less than the tolerance.
[[nodiscard]] BenchmarkResult benchmark_optimize(const CommunityData& data, const RecConfig& cfg,
                                                 std::size_t start_slot, std::size_t slots,
                                                 const BenchmarkOptions& opt);

/// Alpha actually applied in every node-slot of a recorded run.
[[nodiscard]] AlphaSchedule realized_alpha(const SimulationRun& run);

/// (auto - other) / |auto|, as a fraction.
[[nodiscard]] double savings(double auto_objective, double other_objective);

}  // namespace rechems
