#include "rechems/hems.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rechems/local_ems.hpp"

namespace rechems {

const char* to_string(SimulationMode mode) {
  switch (mode) {
    case SimulationMode::auto_consumption: return "auto";
    case SimulationMode::offline: return "offline";
    case SimulationMode::online: return "online";
  }
  return "?";
}

SimulationMode simulation_mode_from_string(std::string_view text) {
  if (text == "auto" || text == "auto_consumption") return SimulationMode::auto_consumption;
  if (text == "offline") return SimulationMode::offline;
  if (text == "online") return SimulationMode::online;
  throw std::invalid_argument("unknown mode '" + std::string(text) +
                              "' (expected auto, offline or online)");
}

AlphaSchedule::AlphaSchedule(std::size_t first_slot_, std::size_t nodes_, std::size_t slots_,
                             double fill)
    : first_slot(first_slot_), nodes(nodes_), slots(slots_), values(nodes_ * slots_, fill) {}

Policy Policy::self_consumption() { return Policy(SelfConsumption{}); }

Policy Policy::fis(std::shared_ptr<const FisModel> model) {
  if (!model) throw std::invalid_argument("fis policy needs a model");
  return Policy(std::move(model));
}

Policy Policy::fis(FisModel model) {
  return fis(std::make_shared<const FisModel>(std::move(model)));
}

Policy Policy::constant(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must be in [0, 1]");
  return Policy(Constant{alpha});
}

Policy Policy::schedule(std::shared_ptr<const AlphaSchedule> alphas) {
  if (!alphas) throw std::invalid_argument("schedule policy needs a schedule");
  if (alphas->values.size() != alphas->nodes * alphas->slots) {
    throw std::invalid_argument("alpha schedule size does not match nodes x slots");
  }
  return Policy(std::move(alphas));
}

Policy Policy::schedule(AlphaSchedule alphas) {
  return schedule(std::make_shared<const AlphaSchedule>(std::move(alphas)));
}

const FisModel* Policy::fis_model() const {
  if (const auto* p = std::get_if<std::shared_ptr<const FisModel>>(&kind_)) return p->get();
  return nullptr;
}

std::string Policy::describe() const {
  struct Visitor {
    std::string operator()(const SelfConsumption&) const { return "self-consumption"; }
    std::string operator()(const std::shared_ptr<const FisModel>&) const { return "fis"; }
    std::string operator()(const Constant& c) const { return "constant " + std::to_string(c.alpha); }
    std::string operator()(const std::shared_ptr<const AlphaSchedule>&) const { return "schedule"; }
  };
  return std::visit(Visitor{}, kind_);
}

double Policy::alpha(std::size_t node, std::size_t slot, double projected_soe,
                     bool& fallback) const {
  fallback = false;
  switch (kind_.index()) {
    case 0:
      return 1.0;
    case 1: {
      const Inference inf = std::get<1>(kind_)->evaluate(projected_soe);
      fallback = inf.neutral_fallback;
      return inf.alpha;
    }
    case 2:
      return std::get<2>(kind_).alpha;
    default: {
      const AlphaSchedule& s = *std::get<3>(kind_);
      if (node >= s.nodes || slot < s.first_slot || slot >= s.first_slot + s.slots) {
        throw std::out_of_range("alpha schedule has no entry for node " + std::to_string(node) +
                                " slot " + std::to_string(slot));
      }
      return s.at(node, slot);
    }
  }
}

StepCounters& StepCounters::operator+=(const StepCounters& o) {
  node_slots += o.node_slots;
  hems_overrides += o.hems_overrides;
  fis_fallbacks += o.fis_fallbacks;
  return *this;
}

double objective(std::span<const TimeslotResult> results) {
  double total = 0.0;
  for (const TimeslotResult& r : results) total += r.objective();
  return total;
}

namespace {

// Per-slot worker with scratch storage reused across a run.
class SlotEngine {
 public:
  SlotEngine(const RecConfig& cfg, double dt_h) : cfg_(cfg), dt_(dt_h), flows_(cfg.node_count()) {
    for (std::size_t x = 0; x < cfg.node_count(); ++x) flows_[x].u_pv = cfg.nodes[x].u_pv;
  }

  SlotSettlement advance(std::span<double> soe, std::span<const ForecastPair> forecasts,
                         std::span<const double> gen, std::span<const double> load,
                         std::size_t slot, const Policy& policy, StepCounters& counters,
                         TimeslotResult* record) {
    const bool overrides = policy.overrides();
    for (std::size_t x = 0; x < flows_.size(); ++x) {
      const EssParams& ess = cfg_.nodes[x].ess;
      double alpha = 1.0;
      if (overrides) {
        const double p_fc = net_power(forecasts[x].p_gen_hat_kw, forecasts[x].p_load_hat_kw);
        const Dispatch local = dispatch(p_fc, soe[x], 1.0, dt_, ess);
        const double projected = soe_update(soe[x], local.p_gl_s_kw, dt_, ess, p_fc);
        bool fallback = false;
        alpha = policy.alpha(x, slot, projected, fallback);
        ++counters.hems_overrides;
        if (fallback) ++counters.fis_fallbacks;
      }
      ++counters.node_slots;

      const double p_star = net_power(gen[x], load[x]);
      const Dispatch d = dispatch(p_star, soe[x], alpha, dt_, ess);
      const double next = soe_update(soe[x], d.p_gl_s_kw, dt_, ess, p_star);
      NodeFlows& f = flows_[x];
      f.p_gen_kw = gen[x];
      f.p_load_kw = load[x];
      f.p_gl_s_kw = d.p_gl_s_kw;
      f.p_gl_n_kw = d.p_gl_n_kw;
      f.wear_cost_eur = wear_cost(soe[x], next, d.p_gl_s_kw, dt_, ess);
      if (record != nullptr) {
        record->nodes[x] = {gen[x], load[x], p_star, alpha, d.p_gl_s_kw, d.p_gl_n_kw,
                            soe[x],  next,    f.wear_cost_eur};
      }
      soe[x] = next;
    }
    return settle_slot(flows_, dt_, cfg_.tariff);
  }

 private:
  const RecConfig& cfg_;
  double dt_;
  std::vector<NodeFlows> flows_;
};

void check_node_spans(std::size_t n, std::size_t soe, std::size_t fc, std::size_t gen,
                      std::size_t load) {
  if (soe != n || fc != n || gen != n || load != n) {
    throw std::invalid_argument("step: one SoE, forecast, generation and load value per node required");
  }
}

}  // namespace

StepResult step(std::span<const double> soe, std::span<const ForecastPair> forecasts,
                std::span<const double> actual_gen_kw, std::span<const double> actual_load_kw,
                std::size_t slot, const Policy& policy, const RecConfig& cfg, double dt_h,
                StepCounters* counters) {
  check_node_spans(cfg.node_count(), soe.size(), forecasts.size(), actual_gen_kw.size(),
                   actual_load_kw.size());
  StepResult out;
  out.soe.assign(soe.begin(), soe.end());
  out.result.slot = slot;
  out.result.nodes.resize(cfg.node_count());
  StepCounters local;
  SlotEngine engine(cfg, dt_h);
  out.result.settlement = engine.advance(out.soe, forecasts, actual_gen_kw, actual_load_kw, slot,
                                         policy, local, &out.result);
  if (counters != nullptr) *counters += local;
  return out;
}

SimulationRun run(const CommunityData& data, const Policy& policy, const RecConfig& cfg,
                  const RunOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.validate();
  const std::size_t n = cfg.node_count();
  if (data.node_count() != n) {
    throw std::invalid_argument("data has " + std::to_string(data.node_count()) +
                                " nodes, configuration has " + std::to_string(n));
  }
  if (opt.slots == 0) throw std::invalid_argument("run: horizon must be at least one slot");
  if (!data.covers(opt.start_slot, opt.slots)) {
    throw std::invalid_argument("run: data covers slots [" + std::to_string(data.first_slot()) +
                                ", " + std::to_string(data.end_slot()) + "), horizon needs [" +
                                std::to_string(opt.start_slot) + ", " +
                                std::to_string(opt.start_slot + opt.slots) + ")");
  }
  if (opt.mode == SimulationMode::online) {
    if (opt.forecaster == nullptr) {
      throw std::invalid_argument("online mode requires a forecaster");
    }
    if (opt.start_slot == data.first_slot()) {
      throw std::invalid_argument("online mode needs measured history before the first slot");
    }
  }

  SimulationRun out;
  out.mode = opt.mode;
  out.start_slot = opt.start_slot;
  out.slots = opt.slots;
  std::vector<double> soe = opt.initial_soe.empty() ? cfg.initial_soe() : opt.initial_soe;
  if (soe.size() != n) throw std::invalid_argument("run: one initial SoE per node required");
  for (std::size_t x = 0; x < n; ++x) {
    const EssParams& e = cfg.nodes[x].ess;
    if (!(soe[x] >= e.soe_min && soe[x] <= e.soe_max)) {
      throw std::invalid_argument("run: initial SoE of node '" + cfg.nodes[x].id +
                                  "' outside [soe_min, soe_max]");
    }
  }

  const Policy effective =
      opt.mode == SimulationMode::auto_consumption ? Policy::self_consumption() : policy;
  const std::size_t clamps_before = opt.forecaster ? opt.forecaster->clamped_count() : 0;

  SlotEngine engine(cfg, kSlotHours);
  HourlySharing hourly;
  std::vector<ForecastPair> forecasts(n);
  std::vector<double> gen(n);
  std::vector<double> load(n);
  if (opt.record) out.results.reserve(opt.slots);
  TimeslotResult scratch;

  for (std::size_t i = 0; i < opt.slots; ++i) {
    const std::size_t slot = opt.start_slot + i;
    for (std::size_t x = 0; x < n; ++x) {
      gen[x] = data.gen(x, slot);
      load[x] = data.load(x, slot);
      if (opt.mode == SimulationMode::online) {
        forecasts[x] = opt.forecaster->forecast(x, data.history(x, slot - 1));
      } else {
        forecasts[x] = {gen[x], load[x]};
      }
    }
    TimeslotResult* record = nullptr;
    if (opt.record) {
      scratch.slot = slot;
      scratch.nodes.resize(n);
      record = &scratch;
    }
    SlotSettlement s =
        engine.advance(soe, forecasts, gen, load, slot, effective, out.counters, record);
    if (cfg.tariff.sharing_period == SharingPeriod::hour) {
      hourly.apply(s, slot, i + 1 == opt.slots, cfg.tariff);
    }
    out.totals += s.cash;
    out.total_objective += s.cash.net_cost();
    if (opt.record) {
      scratch.settlement = s;
      out.results.push_back(scratch);
    }
  }
  out.final_soe = std::move(soe);
  if (opt.forecaster != nullptr) out.forecast_clamps = opt.forecaster->clamped_count() - clamps_before;
  out.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

double evaluate_objective(const CommunityData& data, const Policy& policy, const RecConfig& cfg,
                          std::size_t start_slot, std::size_t slots) {
  RunOptions opt;
  opt.mode = SimulationMode::offline;
  opt.start_slot = start_slot;
  opt.slots = slots;
  opt.record = false;
  return run(data, policy, cfg, opt).total_objective;
}

std::vector<std::string> validate_training_window(const CommunityData& data,
                                                  const TrainingWindow& window) {
  std::vector<std::string> warnings;
  if (window.slots == 0 || !data.covers(window.start_slot, window.slots)) {
    throw std::invalid_argument("training window [" + std::to_string(window.start_slot) + ", " +
                                std::to_string(window.start_slot + window.slots) +
                                ") is not covered by the data");
  }
  const std::size_t end = window.start_slot + window.slots;
  bool has_dark_slot = false;
  for (std::size_t k = window.start_slot; k < end; ++k) {
    if (data.community_gen(k) == 0.0) has_dark_slot = true;
  }
  if (!has_dark_slot) warnings.emplace_back("training window has no slot without PV generation");

  const std::size_t day_begin =
      std::max(data.first_slot(), window.start_slot / kSlotsPerDay * kSlotsPerDay);
  const std::size_t day_end =
      std::min(data.end_slot(), window.start_slot / kSlotsPerDay * kSlotsPerDay + kSlotsPerDay);
  std::size_t peak = day_begin;
  for (std::size_t k = day_begin; k < day_end; ++k) {
    if (data.community_gen(k) > data.community_gen(peak)) peak = k;
  }
  if (peak < window.start_slot || peak >= end) {
    warnings.push_back("training window misses the PV peak of its day (slot " +
                       std::to_string(peak) + ")");
  }
  return warnings;
}

TrainingReport train_fis(const CommunityData& data, const TrainingWindow& window,
                         const RecConfig& cfg, const TrainingOptions& opt) {
  if (opt.repeats == 0) throw std::invalid_argument("train: repeats must be >= 1");
  cfg.validate();
  TrainingReport report;
  report.warnings = validate_training_window(data, window);

  ga::GaConfig ga = opt.ga;
  const auto lo = FisGenome::lower_bounds(opt.decode);
  const auto hi = FisGenome::upper_bounds(opt.decode);
  ga.lower.assign(lo.begin(), lo.end());
  ga.upper.assign(hi.begin(), hi.end());

  const ga::FitnessFn fitness = [&](std::span<const double> genes) {
    FisGenome g;
    std::copy(genes.begin(), genes.end(), g.genes.begin());
    return evaluate_objective(data, Policy::fis(decode(g, opt.decode)), cfg, window.start_slot,
                              window.slots);
  };

  report.best_fitness = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < opt.repeats; ++r) {
    ga.seed = opt.ga.seed + r;
    ga::EvolutionResult res = ga::evolve(fitness, ga);
    TrainingRepeat rep;
    rep.seed = ga.seed;
    std::copy(res.best.genes.begin(), res.best.genes.end(), rep.genome.genes.begin());
    rep.fitness = res.best.fitness;
    rep.history = std::move(res.history);
    rep.evaluations = res.evaluations;
    if (rep.fitness < report.best_fitness) {
      report.best_fitness = rep.fitness;
      report.best_genome = rep.genome;
    }
    report.repeats.push_back(std::move(rep));
  }

  double sum = 0.0;
  for (const TrainingRepeat& r : report.repeats) sum += r.fitness;
  report.mean_fitness = sum / static_cast<double>(report.repeats.size());
  double sq = 0.0;
  for (const TrainingRepeat& r : report.repeats) {
    sq += (r.fitness - report.mean_fitness) * (r.fitness - report.mean_fitness);
  }
  report.stddev_fitness = std::sqrt(sq / static_cast<double>(report.repeats.size()));
  return report;
}

BenchmarkResult benchmark_optimize(const CommunityData& data, const RecConfig& cfg,
                                   std::size_t start_slot, std::size_t slots,
                                   const BenchmarkOptions& opt) {
  cfg.validate();
  const std::size_t n = cfg.node_count();
  const std::size_t dim = n * slots;
  if (dim == 0) throw std::invalid_argument("benchmark: empty horizon");
  if (!data.covers(start_slot, slots)) {
    throw std::invalid_argument("benchmark: horizon not covered by the data");
  }

  ga::GaConfig ga = opt.ga;
  ga.lower.assign(dim, 0.0);
  ga.upper.assign(dim, 1.0);
  for (double c : opt.constant_seeds) ga.initial_individuals.emplace_back(dim, c);
  for (const AlphaSchedule& w : opt.warm_starts) {
    if (w.first_slot != start_slot || w.nodes != n || w.slots != slots) {
      throw std::invalid_argument("benchmark: warm start does not match the horizon");
    }
    ga.initial_individuals.push_back(w.values);
  }

  auto evaluate = [&](std::span<const double> genes) {
    AlphaSchedule s(start_slot, n, slots);
    s.values.assign(genes.begin(), genes.end());
    return evaluate_objective(data, Policy::schedule(std::move(s)), cfg, start_slot, slots);
  };

  BenchmarkResult out;
  const ga::EvolutionResult stage1 = ga::evolve(evaluate, ga);
  out.evaluations = stage1.evaluations;
  out.stage1_objective = stage1.best.fitness;

  // Stage 2 mutates one shared schedule in place.
  auto current = std::make_shared<AlphaSchedule>(start_slot, n, slots);
  current->values = stage1.best.genes;
  const Policy policy = Policy::schedule(std::shared_ptr<const AlphaSchedule>(current));
  auto objective_now = [&] {
    ++out.evaluations;
    return evaluate_objective(data, policy, cfg, start_slot, slots);
  };
  double best = objective_now();

  constexpr double kInvPhi = 0.6180339887498949;
  for (std::size_t sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    const double before = best;
    for (std::size_t i = 0; i < dim; ++i) {
      const std::size_t node = i / slots;
      const std::size_t slot = start_slot + i % slots;
      if (net_power(data.gen(node, slot), data.load(node, slot)) == 0.0) continue;

      double& gene = current->values[i];
      double best_alpha = gene;
      auto probe = [&](double a) {
        gene = a;
        const double v = objective_now();
        if (v < best) {
          best = v;
          best_alpha = a;
        }
        return v;
      };
      probe(0.0);
      probe(1.0);
      double a = 0.0;
      double b = 1.0;
      double c = b - kInvPhi * (b - a);
      double d = a + kInvPhi * (b - a);
      double fc = probe(c);
      double fd = probe(d);
      while (b - a > opt.golden_tolerance) {
        if (fc < fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - kInvPhi * (b - a);
          fc = probe(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + kInvPhi * (b - a);
          fd = probe(d);
        }
      }
      gene = best_alpha;
    }
    ++out.sweeps;
    if (before - best < opt.sweep_tolerance) break;
  }

  out.alpha = *current;
  out.objective = best;
  return out;
}

AlphaSchedule realized_alpha(const SimulationRun& run) {
  if (run.results.size() != run.slots) {
    throw std::invalid_argument("realized_alpha needs a recorded run");
  }
  const std::size_t n = run.results.empty() ? 0 : run.results.front().nodes.size();
  AlphaSchedule s(run.start_slot, n, run.slots);
  for (const TimeslotResult& r : run.results) {
    for (std::size_t x = 0; x < n; ++x) s.at(x, r.slot) = r.nodes[x].alpha;
  }
  return s;
}

double savings(double auto_objective, double other_objective) {
  if (auto_objective == 0.0) throw std::domain_error("savings: auto objective is zero");
  return (auto_objective - other_objective) / std::abs(auto_objective);
}

}  // namespace rechems
