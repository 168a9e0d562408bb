#include "rechems/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "rechems/csv_io.hpp"
#include "text_util.hpp"

namespace rechems {

using nlohmann::json;

ForecasterChoice parse_forecaster_choice(std::string_view text) {
  ForecasterChoice c;
  if (text.empty() || text == "none") {
    c.kind = ForecasterChoice::Kind::none;
  } else if (text == "persistence") {
    c.kind = ForecasterChoice::Kind::persistence;
  } else if (text == "seasonal" || text == "seasonal_naive") {
    c.kind = ForecasterChoice::Kind::seasonal_naive;
  } else if (text.substr(0, 5) == "file:" && text.size() > 5) {
    c.kind = ForecasterChoice::Kind::file;
    c.file = std::string(text.substr(5));
  } else {
    throw std::invalid_argument("unknown forecaster '" + std::string(text) +
                                "' (expected persistence, seasonal_naive or file:<path>)");
  }
  return c;
}

std::string to_string(const ForecasterChoice& choice) {
  switch (choice.kind) {
    case ForecasterChoice::Kind::none: return "none";
    case ForecasterChoice::Kind::persistence: return "persistence";
    case ForecasterChoice::Kind::seasonal_naive: return "seasonal_naive";
    case ForecasterChoice::Kind::file: return "file:" + choice.file.string();
  }
  return "?";
}

std::unique_ptr<Forecaster> make_forecaster(const ForecasterChoice& choice,
                                            const std::vector<std::string>& node_ids) {
  switch (choice.kind) {
    case ForecasterChoice::Kind::persistence:
      return std::make_unique<PersistenceForecaster>();
    case ForecasterChoice::Kind::seasonal_naive:
      return std::make_unique<SeasonalNaiveForecaster>(choice.period);
    case ForecasterChoice::Kind::file:
      return std::make_unique<FileForecaster>(choice.file, node_ids);
    case ForecasterChoice::Kind::none:
      break;
  }
  throw std::invalid_argument("no forecaster selected");
}

ga::GaConfig GaSettings::to_config() const {
  ga::GaConfig c;
  c.population = population;
  c.crossover_fraction = crossover_fraction;
  c.mutation_probability = mutation_probability;
  c.max_generations = generations;
  c.elite_count = elite_count;
  c.seed = seed;
  return c;
}

namespace {

struct Range {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = false;
  bool hi_open = false;

  [[nodiscard]] bool contains(double v) const {
    return (lo_open ? v > lo : v >= lo) && (hi_open ? v < hi : v <= hi);
  }
  [[nodiscard]] std::string describe() const {
    std::string s = lo_open ? "(" : "[";
    s += std::isinf(lo) ? "-inf" : detail::format_double(lo);
    s += ", ";
    s += std::isinf(hi) ? "inf" : detail::format_double(hi);
    s += hi_open ? ")" : "]";
    return s;
  }
};

constexpr Range kNonNegative{0.0};
constexpr Range kPositive{0.0, std::numeric_limits<double>::infinity(), true};
constexpr Range kUnit{0.0, 1.0};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument("scenario: " + path + ": " + what);
}

// Reads one JSON object, echoing every setting and rejecting unknown keys.
class Reader {
 public:
  Reader(const json* obj, std::string path, std::vector<ConfigEntry>& echo)
      : obj_(obj), path_(std::move(path)), echo_(echo) {
    if (obj_ != nullptr && !obj_->is_object()) fail(path_, "expected an object");
  }

  double number(const std::string& key, double fallback, Range range,
                const std::string& fallback_source = "default") {
    const json* v = find(key);
    double out = fallback;
    std::string source = fallback_source;
    if (v != nullptr) {
      if (!v->is_number()) fail(at(key), "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) fail(at(key), "must be finite");
      source = "scenario";
    }
    if (!range.contains(out)) {
      fail(at(key), "value " + detail::format_double(out) + " outside " + range.describe());
    }
    echo_.push_back({at(key), detail::format_double(out), source});
    return out;
  }

  std::uint64_t integer(const std::string& key, std::uint64_t fallback, std::uint64_t min = 0) {
    const json* v = find(key);
    std::uint64_t out = fallback;
    std::string source = "default";
    if (v != nullptr) {
      if (!v->is_number_unsigned()) {
        fail(at(key), "expected a non-negative integer");
      }
      out = v->get<std::uint64_t>();
      source = "scenario";
    }
    if (out < min) fail(at(key), "must be >= " + std::to_string(min));
    echo_.push_back({at(key), std::to_string(out), source});
    return out;
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = find(key);
    bool out = fallback;
    if (v != nullptr) {
      if (!v->is_boolean()) fail(at(key), "expected true or false");
      out = v->get<bool>();
    }
    echo_.push_back({at(key), out ? "true" : "false", v ? "scenario" : "default"});
    return out;
  }

  std::string text(const std::string& key, const std::string& fallback, bool echo = true) {
    const json* v = find(key);
    std::string out = fallback;
    if (v != nullptr) {
      if (!v->is_string()) fail(at(key), "expected a string");
      out = v->get<std::string>();
    }
    if (echo) echo_.push_back({at(key), out, v ? "scenario" : "default"});
    return out;
  }

  [[nodiscard]] bool has(const std::string& key) const { return find_raw(key) != nullptr; }
  const json* child(const std::string& key) { return find(key); }
  [[nodiscard]] std::string at(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void finish() const {
    if (obj_ == nullptr) return;
    for (const auto& [key, value] : obj_->items()) {
      if (!seen_.contains(key)) fail(at(key), "unknown key");
    }
  }

 private:
  [[nodiscard]] const json* find_raw(const std::string& key) const {
    if (obj_ == nullptr) return nullptr;
    const auto it = obj_->find(key);
    return it == obj_->end() ? nullptr : &*it;
  }
  const json* find(const std::string& key) {
    seen_.insert(key);
    const json* v = find_raw(key);
    return v != nullptr && v->is_null() ? nullptr : v;
  }

  const json* obj_;
  std::string path_;
  std::vector<ConfigEntry>& echo_;
  std::set<std::string> seen_;
};

// `sources` carries, per field, where the inherited value came from.
EssParams read_ess(const json* obj, const std::string& path, const EssParams& base,
                   std::map<std::string, std::string>& sources, std::vector<ConfigEntry>& echo) {
  Reader r(obj, path, echo);
  auto src = [&](const std::string& k) {
    const auto it = sources.find(k);
    return it == sources.end() ? std::string("default") : it->second;
  };
  auto note = [&](const std::string& k) {
    if (r.has(k)) sources[k] = "scenario";
  };
  EssParams e = base;
  note("capacity_kwh");
  e.capacity_kwh = r.number("capacity_kwh", base.capacity_kwh, kPositive, src("capacity_kwh"));
  note("efficiency");
  e.efficiency = r.number("efficiency", base.efficiency, {0.0, 1.0, true, false}, src("efficiency"));
  note("max_power_kw");
  e.max_power_kw = r.number("max_power_kw", base.max_power_kw, kPositive, src("max_power_kw"));
  note("soe_min");
  e.soe_min = r.number("soe_min", base.soe_min, kUnit, src("soe_min"));
  note("soe_max");
  e.soe_max = r.number("soe_max", base.soe_max, kUnit, src("soe_max"));
  note("acc_scale");
  e.acc_scale = r.number("acc_scale", base.acc_scale, kPositive, src("acc_scale"));
  note("acc_exponent");
  e.acc_exponent = r.number("acc_exponent", base.acc_exponent, kPositive, src("acc_exponent"));
  note("install_price_eur");
  e.install_price_eur =
      r.number("install_price_eur", base.install_price_eur, kPositive, src("install_price_eur"));
  const std::string base_mode =
      base.soe_update_mode == SoeUpdateMode::literal ? "literal" : "delta_efficiency";
  const std::string mode = r.text("soe_update", base_mode);
  if (mode == "delta_efficiency") {
    e.soe_update_mode = SoeUpdateMode::delta_efficiency;
  } else if (mode == "literal") {
    e.soe_update_mode = SoeUpdateMode::literal;
  } else {
    fail(r.at("soe_update"), "expected delta_efficiency or literal");
  }
  r.finish();
  if (!(e.soe_min < e.soe_max)) fail(path, "soe_min must be below soe_max");
  return e;
}

TariffConfig read_tariff(const json* obj, std::vector<ConfigEntry>& echo, bool& pr3_set) {
  Reader r(obj, "tariff", echo);
  TariffConfig t;
  t.tp_rec = r.number("tp_rec", t.tp_rec, kNonNegative);
  t.tras_e = r.number("tras_e", t.tras_e, kNonNegative);
  t.btau_max = r.number("btau_max", t.btau_max, kNonNegative);
  pr3_set = r.has("pr3");
  t.pr3 = r.number("pr3", t.pr3, kNonNegative);
  t.u_pur = r.number("u_pur", t.u_pur, kNonNegative);
  t.u_pur_fixed = r.number("u_pur_fixed", t.u_pur_fixed, kNonNegative);
  t.vat = r.number("vat", t.vat, {0.0, 1.0, false, true});
  const std::string period = r.text("sharing_period", "slot");
  if (period == "slot") {
    t.sharing_period = SharingPeriod::slot;
  } else if (period == "hour") {
    t.sharing_period = SharingPeriod::hour;
  } else {
    fail("tariff.sharing_period", "expected slot or hour");
  }
  r.finish();
  return t;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario: malformed JSON: ") + e.what());
  }
  Scenario s;
  s.base_dir = base_dir;
  auto& echo = s.echo;
  Reader top(&doc, "", echo);

  s.name = top.text("name", s.name);
  s.seed = top.integer("seed", s.seed);
  s.shuffle_pv = top.boolean("shuffle_pv", s.shuffle_pv);
  try {
    s.mode = simulation_mode_from_string(top.text("mode", "auto"));
  } catch (const std::invalid_argument& e) {
    fail("mode", e.what());
  }
  try {
    s.forecaster = parse_forecaster_choice(top.text("forecaster", "none"));
  } catch (const std::invalid_argument& e) {
    fail("forecaster", e.what());
  }
  if (s.forecaster.kind == ForecasterChoice::Kind::file) {
    s.forecaster.file = resolve(base_dir, s.forecaster.file.string());
  }

  {
    Reader r(top.child("simulation"), "simulation", echo);
    s.start_slot = r.integer("start_slot", s.start_slot);
    s.slots = r.integer("slots", s.slots, 1);
    r.finish();
  }
  {
    Reader r(top.child("training"), "training", echo);
    s.training_window.start_slot = r.integer("start_slot", s.training_window.start_slot);
    s.training_window.slots = r.integer("slots", s.training_window.slots, 1);
    s.training_repeats = r.integer("repeats", s.training_repeats, 1);
    r.finish();
  }
  {
    Reader r(top.child("ga"), "ga", echo);
    s.ga.population = r.integer("population", s.ga.population, 2);
    s.ga.crossover_fraction = r.number("crossover_fraction", s.ga.crossover_fraction, kUnit);
    s.ga.mutation_probability = r.number("mutation_probability", s.ga.mutation_probability, kUnit);
    s.ga.generations = r.integer("generations", s.ga.generations);
    s.ga.elite_count = r.integer("elite_count", s.ga.elite_count, 1);
    s.ga.seed = r.integer("seed", s.ga.seed);
    r.finish();
    if (s.ga.elite_count >= s.ga.population) fail("ga.elite_count", "must be below ga.population");
  }

  s.config.tariff = read_tariff(top.child("tariff"), echo, s.pr3_configured);

  std::map<std::string, std::string> ess_sources;
  const EssParams ess_defaults = read_ess(top.child("ess"), "ess", EssParams{}, ess_sources, echo);

  if (const json* u = top.child("u_pv")) {
    if (!u->is_number() || !std::isfinite(u->get<double>()) || u->get<double>() < 0.0) {
      fail("u_pv", "expected a number >= 0");
    }
    s.u_pv_override = u->get<double>();
    echo.push_back({"u_pv", detail::format_double(*s.u_pv_override), "scenario"});
  }

  if (const json* nodes = top.child("nodes")) {
    if (!nodes->is_array()) fail("nodes", "expected an array");
    for (std::size_t i = 0; i < nodes->size(); ++i) {
      const std::string path = "nodes[" + std::to_string(i) + "]";
      Reader r(&(*nodes)[i], path, echo);
      NodeConfig n;
      n.id = r.text("id", "node" + std::to_string(i + 1));
      NodeSource src;
      if (!r.has("generation_csv") || !r.has("load_csv")) {
        fail(path, "generation_csv and load_csv are required");
      }
      src.generation_csv = resolve(base_dir, r.text("generation_csv", ""));
      src.load_csv = resolve(base_dir, r.text("load_csv", ""));
      n.pv_peak_kw = r.number("pv_peak_kw", 3.0, kNonNegative);
      n.pv_install_cost_eur = r.number("pv_install_cost_eur", 6000.0, kPositive);
      auto sources = ess_sources;
      n.ess = read_ess(r.child("ess"), path + ".ess", ess_defaults, sources, echo);
      n.initial_soe = r.number("initial_soe", 0.5, kUnit);
      if (n.initial_soe < n.ess.soe_min || n.initial_soe > n.ess.soe_max) {
        fail(r.at("initial_soe"), "must lie in [soe_min, soe_max]");
      }
      if (s.u_pv_override) n.u_pv = *s.u_pv_override;
      r.finish();
      s.config.nodes.push_back(std::move(n));
      s.sources.push_back(std::move(src));
    }
  }
  top.finish();

  std::set<std::string> ids;
  for (std::size_t i = 0; i < s.config.nodes.size(); ++i) {
    if (!ids.insert(s.config.nodes[i].id).second) {
      fail("nodes[" + std::to_string(i) + "].id", "duplicate id '" + s.config.nodes[i].id + "'");
    }
  }
  return s;
}

LoadedScenario load_scenario(const std::filesystem::path& path) {
  LoadedScenario out;
  Scenario& s = out.scenario;
  s = parse_scenario(detail::read_text_file(path), path.parent_path());
  const std::size_t n = s.config.node_count();
  if (n == 0) throw std::invalid_argument("scenario: nodes: at least one node is required");

  if (s.shuffle_pv) {
    std::vector<std::filesystem::path> pv;
    for (const NodeSource& src : s.sources) pv.push_back(src.generation_csv);
    std::mt19937_64 rng(s.seed);
    std::shuffle(pv.begin(), pv.end(), rng);
    for (std::size_t x = 0; x < n; ++x) s.sources[x].generation_csv = pv[x];
  }
  for (std::size_t x = 0; x < n; ++x) {
    const std::string p = "nodes[" + std::to_string(x) + "].";
    s.echo.push_back({p + "generation_csv (resolved)", s.sources[x].generation_csv.string(),
                      s.shuffle_pv ? "computed" : "scenario"});
  }

  std::vector<PowerProfile> gen;
  std::vector<PowerProfile> load;
  for (std::size_t x = 0; x < n; ++x) {
    gen.push_back(read_profile_csv(s.sources[x].generation_csv, ProfileKind::generation,
                                   s.config.nodes[x].id + "/pv"));
    load.push_back(read_profile_csv(s.sources[x].load_csv, ProfileKind::load,
                                    s.config.nodes[x].id + "/load"));
  }

  // Crop every profile to the common time range.
  std::int64_t begin = std::numeric_limits<std::int64_t>::min();
  std::int64_t end = std::numeric_limits<std::int64_t>::max();
  auto extent = [&](const PowerProfile& p) {
    begin = std::max(begin, p.start_epoch_s());
    end = std::min(end, p.start_epoch_s() + static_cast<std::int64_t>(p.size()) * kSlotSeconds);
  };
  for (const auto& p : gen) extent(p);
  for (const auto& p : load) extent(p);
  if (end <= begin) throw std::invalid_argument("scenario: profiles share no common time range");
  auto crop = [&](const PowerProfile& p) {
    const std::int64_t offset = begin - p.start_epoch_s();
    if (offset % kSlotSeconds != 0) {
      throw std::invalid_argument("scenario: profile '" + p.id() +
                                  "' is not aligned to the 15-minute grid of the others");
    }
    const auto first = static_cast<std::size_t>(offset / kSlotSeconds);
    const auto count = static_cast<std::size_t>((end - begin) / kSlotSeconds);
    const auto samples = p.samples().subspan(first, count);
    return PowerProfile(p.id(), p.kind(), {samples.begin(), samples.end()}, begin, 0);
  };
  for (auto& p : gen) p = crop(p);
  for (auto& p : load) p = crop(p);
  s.echo.push_back({"data.slots", std::to_string((end - begin) / kSlotSeconds), "computed"});

  if (s.u_pv_override) {
    for (NodeConfig& node : s.config.nodes) node.u_pv = *s.u_pv_override;
  } else {
    std::vector<double> costs;
    std::vector<double> annual;
    for (std::size_t x = 0; x < n; ++x) {
      costs.push_back(s.config.nodes[x].pv_install_cost_eur);
      annual.push_back(gen[x].mean() * 24.0 * 365.0);
    }
    const double u_pv = compute_u_pv(costs, annual);
    for (NodeConfig& node : s.config.nodes) node.u_pv = u_pv;
    s.echo.push_back({"u_pv", detail::format_double(u_pv), "computed"});
  }
  s.echo.push_back({"slot_hours", detail::format_double(kSlotHours), "default"});
  s.config.validate();
  out.data = CommunityData(std::move(gen), std::move(load));
  return out;
}

std::string format_config_echo(const Scenario& scenario) {
  std::size_t width = 0;
  for (const ConfigEntry& e : scenario.echo) width = std::max(width, e.path.size());
  std::string out;
  for (const ConfigEntry& e : scenario.echo) {
    out += e.path;
    out.append(width - e.path.size(), ' ');
    out += " = ";
    out += e.value;
    out += "  (";
    out += e.source;
    out += ")\n";
  }
  return out;
}

}  // namespace rechems
