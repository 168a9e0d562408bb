#include "rechems_cli/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "rechems/hems.hpp"
#include "rechems/model_io.hpp"
#include "rechems/objectives.hpp"
#include "rechems/report.hpp"
#include "rechems/scenario.hpp"
#include "rechems/synthetic.hpp"

namespace rechems::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string number(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

// ---------------------------------------------------------------- benchmark-ga

struct BenchmarkGaArgs {
  std::size_t seeds = 10;
  std::uint64_t first_seed = 1;
  std::string out;
  std::string history_dir;
  bool timing = false;
};

int cmd_benchmark_ga(const BenchmarkGaArgs& a, std::ostream& out) {
  std::string csv = a.timing ? "benchmark,seed,final_fitness,wall_time_s\n"
                             : "benchmark,seed,final_fitness\n";
  std::ostringstream table;
  for (const std::string& name : ga::benchmark_names()) {
    const ga::BenchmarkProblem p = ga::benchmark_problem(name);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.seeds; ++i) {
      const std::uint64_t seed = a.first_seed + i;
      ga::GaConfig cfg;
      cfg.lower.assign(2, p.lower);
      cfg.upper.assign(2, p.upper);
      cfg.seed = seed;
      const auto t0 = std::chrono::steady_clock::now();
      const ga::EvolutionResult r =
          ga::evolve([&](std::span<const double> x) { return p.objective(x); }, cfg);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      sum += r.best.fitness;
      csv += name + "," + std::to_string(seed) + "," + number(r.best.fitness);
      if (a.timing) csv += "," + number(secs);
      csv += "\n";
      if (!a.history_dir.empty()) {
        std::string h = "generation,best,mean\n";
        for (const auto& g : r.history) {
          h += std::to_string(g.generation) + "," + number(g.best) + "," + number(g.mean) + "\n";
        }
        write_file(fs::path(a.history_dir) / (name + "_seed" + std::to_string(seed) + ".csv"), h);
      }
    }
    table << std::left << std::setw(11) << name << " mean final fitness "
          << number(sum / static_cast<double>(a.seeds)) << "\n";
  }
  if (a.out.empty()) {
    out << csv;
  } else {
    write_file(a.out, csv);
    out << table.str();
  }
  return 0;
}

// ----------------------------------------------------------------------- train

struct TrainArgs {
  std::string scenario;
  std::string out;
  std::optional<std::size_t> repeats;
  std::optional<std::size_t> generations;
  std::optional<std::size_t> population;
  std::optional<std::uint64_t> seed;
  bool print_config = false;
};

int cmd_train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
  LoadedScenario ls = load_scenario(a.scenario);
  Scenario& s = ls.scenario;
  if (a.repeats) s.training_repeats = *a.repeats;
  if (a.generations) s.ga.generations = *a.generations;
  if (a.population) s.ga.population = *a.population;
  if (a.seed) s.ga.seed = *a.seed;
  if (a.print_config) {
    out << format_config_echo(s);
    return 0;
  }
  if (a.out.empty()) throw std::invalid_argument("train: --out is required");

  TrainingOptions opt;
  opt.ga = s.ga.to_config();
  opt.repeats = s.training_repeats;
  const TrainingReport rep = train_fis(ls.data, s.training_window, s.config, opt);
  for (const std::string& w : rep.warnings) err << "warning: " << w << "\n";

  const fs::path dir(a.out);
  const DecodeOptions decode_opt;
  write_fis_json(dir / "fis.json", decode(rep.best_genome, decode_opt), rep.best_genome);

  ordered_json j;
  j["scenario"] = s.name;
  j["window"] = {{"start_slot", s.training_window.start_slot}, {"slots", s.training_window.slots}};
  j["ga"] = {{"population", s.ga.population},
             {"crossover_fraction", s.ga.crossover_fraction},
             {"mutation_probability", s.ga.mutation_probability},
             {"generations", s.ga.generations},
             {"elite_count", s.ga.elite_count},
             {"seed", s.ga.seed}};
  j["repeats"] = ordered_json::array();
  std::string history = "repeat,seed,generation,best,mean\n";
  for (std::size_t r = 0; r < rep.repeats.size(); ++r) {
    const TrainingRepeat& t = rep.repeats[r];
    j["repeats"].push_back(
        {{"seed", t.seed}, {"best_fitness", t.fitness}, {"evaluations", t.evaluations}});
    for (const auto& g : t.history) {
      history += std::to_string(r) + "," + std::to_string(t.seed) + "," +
                 std::to_string(g.generation) + "," + number(g.best) + "," + number(g.mean) + "\n";
    }
  }
  j["best_fitness"] = rep.best_fitness;
  j["mean_fitness"] = rep.mean_fitness;
  j["stddev_fitness"] = rep.stddev_fitness;
  j["warnings"] = rep.warnings;
  write_file(dir / "training.json", j.dump(2) + "\n");
  write_file(dir / "training_history.csv", history);

  out << "trained " << rep.repeats.size() << " repeats: best " << fixed(rep.best_fitness, 4)
      << " EUR, mean " << fixed(rep.mean_fitness, 4) << " EUR, sigma "
      << fixed(rep.stddev_fitness, 4) << " EUR\n";
  out << "model written to " << (dir / "fis.json").string() << "\n";
  return 0;
}

// -------------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string scenario;
  std::string mode;
  std::string fis;
  std::string forecaster;
  std::string out;
  bool timing = false;
  bool print_config = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  LoadedScenario ls = load_scenario(a.scenario);
  Scenario& s = ls.scenario;
  if (!a.mode.empty()) s.mode = simulation_mode_from_string(a.mode);
  if (!a.forecaster.empty()) s.forecaster = parse_forecaster_choice(a.forecaster);
  if (a.print_config) {
    out << format_config_echo(s);
    out << "mode = " << to_string(s.mode) << "\n";
    out << "forecaster = " << to_string(s.forecaster) << "\n";
    return 0;
  }
  if (a.out.empty()) throw std::invalid_argument("simulate: --out is required");

  RunOptions opt;
  opt.mode = s.mode;
  opt.start_slot = s.start_slot;
  opt.slots = s.slots;

  Policy policy = Policy::self_consumption();
  if (s.mode != SimulationMode::auto_consumption) {
    if (a.fis.empty()) {
      throw std::invalid_argument(std::string(to_string(s.mode)) +
                                  " mode needs a trained model: pass --fis <model.json>");
    }
    policy = Policy::fis(read_fis_json(a.fis).model);
  }
  std::unique_ptr<Forecaster> forecaster;
  if (s.mode == SimulationMode::online) {
    if (s.forecaster.kind == ForecasterChoice::Kind::none) {
      throw std::invalid_argument(
          "online mode requires a forecaster: pass --forecaster persistence|seasonal_naive|"
          "file:<path> or set \"forecaster\" in the scenario");
    }
    std::vector<std::string> ids;
    for (const NodeConfig& n : s.config.nodes) ids.push_back(n.id);
    forecaster = make_forecaster(s.forecaster, ids);
    opt.forecaster = forecaster.get();
  }

  const SimulationRun result = run(ls.data, policy, s.config, opt);
  RunOptions auto_opt = opt;
  auto_opt.mode = SimulationMode::auto_consumption;
  auto_opt.forecaster = nullptr;
  auto_opt.record = false;
  const double auto_objective = run(ls.data, policy, s.config, auto_opt).total_objective;

  RunMetadata meta;
  meta.scenario = s.name;
  meta.policy = s.mode == SimulationMode::auto_consumption ? "self-consumption" : "fis";
  meta.forecaster = s.mode == SimulationMode::online ? to_string(s.forecaster)
                    : s.mode == SimulationMode::offline ? "perfect"
                                                        : "none";
  meta.auto_objective = auto_objective;
  meta.pr3_configured = s.pr3_configured;
  meta.include_timing = a.timing;
  write_run(a.out, result, s.config, meta);

  out << to_string(s.mode) << " objective " << fixed(result.total_objective, 4) << " EUR";
  if (s.mode != SimulationMode::auto_consumption && auto_objective != 0.0) {
    out << " (auto " << fixed(auto_objective, 4) << " EUR, z "
        << fixed(-100.0 * savings(auto_objective, result.total_objective), 2) << "%)";
  }
  out << "\n";
  if (!s.pr3_configured) out << "note: tariff.pr3 not set; using the 0.10 EUR/kWh test default\n";
  return 0;
}

// -------------------------------------------------------------------- optimize

struct OptimizeArgs {
  std::string scenario;
  std::string out;
  std::optional<std::size_t> generations;
  std::size_t max_sweeps = 50;
};

int cmd_optimize(const OptimizeArgs& a, std::ostream& out) {
  LoadedScenario ls = load_scenario(a.scenario);
  Scenario& s = ls.scenario;
  if (a.generations) s.ga.generations = *a.generations;
  if (a.out.empty()) throw std::invalid_argument("optimize: --out is required");
  BenchmarkOptions opt;
  opt.ga = s.ga.to_config();
  opt.max_sweeps = a.max_sweeps;
  const BenchmarkResult r = benchmark_optimize(ls.data, s.config, s.start_slot, s.slots, opt);

  std::string csv = "slot";
  for (const NodeConfig& n : s.config.nodes) csv += "," + n.id;
  csv += "\n";
  for (std::size_t k = s.start_slot; k < s.start_slot + s.slots; ++k) {
    csv += std::to_string(k);
    for (std::size_t x = 0; x < s.config.node_count(); ++x) csv += "," + number(r.alpha.at(x, k));
    csv += "\n";
  }
  write_file(fs::path(a.out) / "alpha.csv", csv);
  ordered_json j;
  j["scenario"] = s.name;
  j["start_slot"] = s.start_slot;
  j["slots"] = s.slots;
  j["objective_eur"] = r.objective;
  j["stage1_objective_eur"] = r.stage1_objective;
  j["sweeps"] = r.sweeps;
  j["evaluations"] = r.evaluations;
  write_file(fs::path(a.out) / "benchmark.json", j.dump(2) + "\n");
  out << "benchmark objective " << fixed(r.objective, 4) << " EUR (stage 1 "
      << fixed(r.stage1_objective, 4) << " EUR, " << r.sweeps << " sweeps)\n";
  return 0;
}

// ---------------------------------------------------------------------- others

int cmd_report(const std::string& run_dir, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    out << report_csv(run_dir);
  } else {
    out << report_json(run_dir);
  }
  return 0;
}

int cmd_synth(const SyntheticOptions& opt, const std::string& dir, std::ostream& out) {
  const SyntheticCommunity c = generate_synthetic(opt);
  write_synthetic(c, opt, dir);
  out << "wrote " << opt.nodes << " homes, " << c.pv.size() << " PV plants, " << opt.days
      << " days to " << dir << "\n";
  return 0;
}

int cmd_inspect(const std::string& path, std::size_t samples, std::ostream& out) {
  const StoredFis fis = read_fis_json(path);
  out << fis.model.describe();
  if (samples >= 2) {
    out << "soe,alpha\n";
    for (std::size_t i = 0; i < samples; ++i) {
      const double soe = static_cast<double>(i) / static_cast<double>(samples - 1);
      out << number(soe) << "," << number(fis.model.infer(soe)) << "\n";
    }
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Renewable energy community simulator and FIS-GA energy manager", "rechems"};
  app.require_subcommand(1);

  BenchmarkGaArgs bga;
  auto* c_bga = app.add_subcommand("benchmark-ga", "Run the GA on the benchmark functions");
  c_bga->add_option("--seeds", bga.seeds, "Number of seeds per benchmark")->check(CLI::PositiveNumber);
  c_bga->add_option("--first-seed", bga.first_seed, "First seed");
  c_bga->add_option("--out", bga.out, "Per-seed CSV (stdout when omitted)");
  c_bga->add_option("--history-dir", bga.history_dir, "Write best/mean history per run");
  c_bga->add_flag("--timing", bga.timing, "Add wall time per run");

  TrainArgs tr;
  auto* c_train = app.add_subcommand("train", "Train the FIS with the GA on the scenario window");
  c_train->add_option("--scenario", tr.scenario, "Scenario JSON")->required();
  c_train->add_option("--out", tr.out, "Output directory");
  c_train->add_option("--repeats", tr.repeats, "GA repetitions")->check(CLI::PositiveNumber);
  c_train->add_option("--generations", tr.generations, "Override GA generations");
  c_train->add_option("--population", tr.population, "Override GA population");
  c_train->add_option("--seed", tr.seed, "Override GA seed");
  c_train->add_flag("--print-config", tr.print_config, "Print the resolved configuration and exit");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Simulate the scenario horizon");
  c_sim->add_option("--scenario", sim.scenario, "Scenario JSON")->required();
  c_sim->add_option("--mode", sim.mode, "auto, offline or online");
  c_sim->add_option("--fis", sim.fis, "Trained model JSON");
  c_sim->add_option("--forecaster", sim.forecaster,
                    "persistence, seasonal_naive, file:<path> or none");
  c_sim->add_option("--out", sim.out, "Output directory");
  c_sim->add_flag("--timing", sim.timing, "Record wall time in the summary");
  c_sim->add_flag("--print-config", sim.print_config, "Print the resolved configuration and exit");

  OptimizeArgs opt;
  auto* c_opt = app.add_subcommand("optimize", "Direct two-stage optimisation of the alpha matrix");
  c_opt->add_option("--scenario", opt.scenario, "Scenario JSON")->required();
  c_opt->add_option("--out", opt.out, "Output directory");
  c_opt->add_option("--generations", opt.generations, "Override GA generations");
  c_opt->add_option("--max-sweeps", opt.max_sweeps, "Refinement sweep limit");

  std::string run_dir;
  std::string format = "json";
  auto* c_rep = app.add_subcommand("report", "Re-sum a simulation run");
  c_rep->add_option("--run", run_dir, "Run directory")->required();
  c_rep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  SyntheticOptions syn;
  std::string syn_out;
  auto* c_syn = app.add_subcommand("synth-data", "Generate a synthetic community and scenario");
  c_syn->add_option("--days", syn.days, "Days")->check(CLI::PositiveNumber);
  c_syn->add_option("--nodes", syn.nodes, "Homes")->check(CLI::PositiveNumber);
  c_syn->add_option("--seed", syn.seed, "Seed");
  c_syn->add_option("--out", syn_out, "Output directory")->required();

  std::string fis_path;
  std::size_t samples = 0;
  auto* c_ins = app.add_subcommand("inspect-fis", "Print the rules and term sets of a model");
  c_ins->add_option("--fis", fis_path, "Model JSON")->required();
  c_ins->add_option("--samples", samples, "Also tabulate alpha over this many SoE points");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (c_bga->parsed()) return cmd_benchmark_ga(bga, out);
    if (c_train->parsed()) return cmd_train(tr, out, err);
    if (c_sim->parsed()) return cmd_simulate(sim, out);
    if (c_opt->parsed()) return cmd_optimize(opt, out);
    if (c_rep->parsed()) return cmd_report(run_dir, format, out);
    if (c_syn->parsed()) return cmd_synth(syn, syn_out, out);
    if (c_ins->parsed()) return cmd_inspect(fis_path, samples, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace rechems::cli
