#include "rechems/report.hpp"

#include <stdexcept>

#include <json.hpp>

#include "text_util.hpp"

namespace rechems {

using nlohmann::ordered_json;

namespace {

constexpr const char* kRunHeader =
    "slot,node,p_gen_kw,p_load_kw,p_gl_star_kw,alpha,p_gl_s_kw,p_gl_n_kw,soe_before,soe_after,"
    "wear_cost_eur,e_gen_kwh,e_dra_kwh,e_sha_kwh,i_sha,i_ret,i_sel,h_ess,h_pur,h_ins,objective_eur";
constexpr std::size_t kRunColumns = 21;

ordered_json cash_json(const CashFlow& c) {
  return {{"i_sha", c.i_sha}, {"i_ret", c.i_ret}, {"i_sel", c.i_sel}, {"h_ess", c.h_ess},
          {"h_pur", c.h_pur}, {"h_ins", c.h_ins}, {"revenue", c.revenue()}, {"cost", c.cost()}};
}

void append(std::string& out, double v) {
  out += ',';
  out += detail::format_double(v);
}

}  // namespace

std::string format_run_csv(const SimulationRun& run, const RecConfig& cfg) {
  std::string out = kRunHeader;
  out += '\n';
  for (const TimeslotResult& r : run.results) {
    for (std::size_t x = 0; x < r.nodes.size(); ++x) {
      const NodeSlotResult& n = r.nodes[x];
      out += std::to_string(r.slot);
      out += ',';
      out += cfg.nodes[x].id;
      for (double v : {n.p_gen_kw, n.p_load_kw, n.p_gl_star_kw, n.alpha, n.p_gl_s_kw, n.p_gl_n_kw,
                       n.soe_before, n.soe_after, n.wear_cost_eur}) {
        append(out, v);
      }
      out += ",,,,,,,,,,\n";
    }
    const SlotSettlement& s = r.settlement;
    out += std::to_string(r.slot);
    out += ",community,,,,,,,,,";
    for (double v : {s.e_gen_kwh, s.e_dra_kwh, s.e_sha_kwh, s.cash.i_sha, s.cash.i_ret, s.cash.i_sel,
                     s.cash.h_ess, s.cash.h_pur, s.cash.h_ins, r.objective()}) {
      append(out, v);
    }
    out += '\n';
  }
  return out;
}

std::string format_summary_json(const SimulationRun& run, const RecConfig& cfg,
                                const RunMetadata& meta) {
  ordered_json j;
  j["scenario"] = meta.scenario;
  j["mode"] = to_string(run.mode);
  j["policy"] = meta.policy;
  j["forecaster"] = meta.forecaster;
  j["start_slot"] = run.start_slot;
  j["slots"] = run.slots;
  j["nodes"] = cfg.node_count();
  j["objective_eur"] = run.total_objective;
  j["totals"] = cash_json(run.totals);
  if (meta.auto_objective) {
    j["auto_objective_eur"] = *meta.auto_objective;
    if (*meta.auto_objective != 0.0) {
      const double s = savings(*meta.auto_objective, run.total_objective);
      j["savings_vs_auto"] = s;
      j["z_percent"] = -100.0 * s;
    }
  }
  j["counters"] = {{"node_slots", run.counters.node_slots},
                   {"hems_overrides", run.counters.hems_overrides},
                   {"fis_fallbacks", run.counters.fis_fallbacks},
                   {"forecast_clamps", run.forecast_clamps}};
  j["final_soe"] = run.final_soe;
  j["pr3_configured"] = meta.pr3_configured;
  if (!meta.pr3_configured) {
    j["warnings"] = {"tariff.pr3 not set in the scenario; the sale price is the 0.10 EUR/kWh test default"};
  }
  if (meta.include_timing) j["wall_time_s"] = run.wall_time_s;
  return j.dump(2) + "\n";
}

void write_run(const std::filesystem::path& dir, const SimulationRun& run, const RecConfig& cfg,
               const RunMetadata& meta) {
  detail::write_text_file(dir / "run.csv", format_run_csv(run, cfg));
  detail::write_text_file(dir / "summary.json", format_summary_json(run, cfg, meta));
}

RunTotals read_run_csv(const std::filesystem::path& path) {
  const std::string text = detail::read_text_file(path);
  const auto lines = detail::split_lines(text);
  if (lines.empty() || lines.front() != kRunHeader) {
    throw std::runtime_error(path.string() + ": not a run csv (header mismatch)");
  }
  RunTotals t;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = detail::split_fields(lines[i]);
    const std::string where = path.string() + " line " + std::to_string(i + 1);
    if (f.size() != kRunColumns) throw std::runtime_error(where + ": wrong number of columns");
    if (f[1] != "community") continue;
    std::size_t slot = 0;
    if (!detail::parse_size(f[0], slot)) throw std::runtime_error(where + ": bad slot");
    double v[7];
    for (std::size_t c = 0; c < 7; ++c) {
      if (!detail::parse_double(f[14 + c], v[c])) throw std::runtime_error(where + ": bad number");
    }
    const CashFlow cash{v[0], v[1], v[2], v[3], v[4], v[5]};
    t.slot_index.push_back(slot);
    t.slot_cash.push_back(cash);
    t.slot_objective.push_back(v[6]);
    t.cash += cash;
    t.objective += v[6];
    ++t.slots;
  }
  return t;
}

std::string report_csv(const std::filesystem::path& run_dir) {
  const RunTotals t = read_run_csv(run_dir / "run.csv");
  std::string out = "slot,i_sha,i_ret,i_sel,h_ess,h_pur,h_ins,objective_eur\n";
  for (std::size_t i = 0; i < t.slots; ++i) {
    const CashFlow& c = t.slot_cash[i];
    out += std::to_string(t.slot_index[i]);
    for (double v : {c.i_sha, c.i_ret, c.i_sel, c.h_ess, c.h_pur, c.h_ins, t.slot_objective[i]}) {
      append(out, v);
    }
    out += '\n';
  }
  return out;
}

std::string report_json(const std::filesystem::path& run_dir) {
  const RunTotals t = read_run_csv(run_dir / "run.csv");
  ordered_json j;
  j["slots"] = t.slots;
  j["objective_eur"] = t.objective;
  j["totals"] = cash_json(t.cash);
  const auto summary_path = run_dir / "summary.json";
  if (std::filesystem::exists(summary_path)) {
    const auto summary = nlohmann::json::parse(detail::read_text_file(summary_path));
    const double expected = summary.at("objective_eur").get<double>();
    j["summary_objective_eur"] = expected;
    j["consistent"] = expected == t.objective;
  }
  return j.dump(2) + "\n";
}

}  // namespace rechems
