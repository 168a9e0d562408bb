#include "rechems/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "rechems/csv_io.hpp"
#include "rechems/units.hpp"
#include "text_util.hpp"

namespace rechems {

namespace {

struct PvPlant {
  double kwp;
  double cost_eur;
  double max_kw;
};
constexpr std::array<PvPlant, 3> kPlants{{{4.0, 7400.0, 3.472}, {3.0, 6000.0, 2.797},
                                          {4.0, 7400.0, 3.439}}};

struct Home {
  double min_kw;
  double max_kw;
  double mean_kw;
};
constexpr std::array<Home, 7> kHomes{{{0.020, 3.784, 0.362},
                                      {0.008, 4.980, 0.256},
                                      {0.016, 6.324, 0.362},
                                      {0.004, 7.044, 0.663},
                                      {0.028, 5.852, 0.426},
                                      {0.024, 6.324, 0.556},
                                      {0.016, 5.864, 0.441}}};

constexpr double kSunrise = 25.0;  // slot of day
constexpr double kSunset = 82.0;

std::vector<double> pv_series(const PvPlant& plant, std::size_t days, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> v(days * kSlotsPerDay, 0.0);
  for (std::size_t d = 0; d < days; ++d) {
    const double cover = 0.75 + 0.25 * unit(rng);
    for (std::size_t k = 0; k < kSlotsPerDay; ++k) {
      const double x = (static_cast<double>(k) + 0.5 - kSunrise) / (kSunset - kSunrise);
      if (x <= 0.0 || x >= 1.0) continue;
      double p = std::pow(std::sin(std::numbers::pi * x), 1.3) * cover;
      if (unit(rng) < 0.15) p *= 1.0 - 0.35 * unit(rng);  // passing cloud
      v[d * kSlotsPerDay + k] = p;
    }
  }
  const auto peak = std::max_element(v.begin(), v.end());
  const double scale = plant.max_kw / *peak;
  for (double& p : v) p *= scale;
  *peak = plant.max_kw;
  return v;
}

double bump(double k, double centre, double width) {
  const double z = (k - centre) / width;
  return std::exp(-0.5 * z * z);
}

std::vector<double> load_series(const Home& home, std::size_t days, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> v(days * kSlotsPerDay, 0.0);
  for (std::size_t d = 0; d < days; ++d) {
    const double morning = 0.6 + 0.8 * unit(rng);
    const double noon = 0.4 + 0.8 * unit(rng);
    const double evening = 1.0 + 1.0 * unit(rng);
    for (std::size_t k = 0; k < kSlotsPerDay; ++k) {
      const double t = static_cast<double>(k);
      double p = 0.25 + 0.1 * unit(rng);
      p += morning * bump(t, 30.0, 3.0) + noon * bump(t, 52.0, 4.0) + evening * bump(t, 80.0, 5.0);
      v[d * kSlotsPerDay + k] = p;
    }
    // a few long appliance cycles
    const int cycles = 1 + static_cast<int>(unit(rng) * 3.0);
    for (int c = 0; c < cycles; ++c) {
      const auto start = static_cast<std::size_t>(28.0 + unit(rng) * 60.0);
      const auto length = static_cast<std::size_t>(3.0 + unit(rng) * 6.0);
      const double power = 1.5 + 3.0 * unit(rng);
      for (std::size_t k = start; k < std::min(start + length, kSlotsPerDay); ++k) {
        v[d * kSlotsPerDay + k] += power;
      }
    }
  }
  for (int iter = 0; iter < 50; ++iter) {
    double mean = 0.0;
    for (double p : v) mean += p;
    mean /= static_cast<double>(v.size());
    const double scale = home.mean_kw / mean;
    for (double& p : v) p = std::clamp(p * scale, home.min_kw, home.max_kw);
  }
  return v;
}

}  // namespace

CommunityData SyntheticCommunity::data() const {
  std::vector<PowerProfile> gen;
  for (std::size_t x = 0; x < loads.size(); ++x) {
    const PowerProfile& p = pv[pv_of_node[x]];
    gen.emplace_back(config.nodes[x].id + "/pv", ProfileKind::generation,
                     std::vector<double>(p.samples().begin(), p.samples().end()), p.start_epoch_s(),
                     p.first_slot());
  }
  return CommunityData(std::move(gen), loads);
}

SyntheticCommunity generate_synthetic(const SyntheticOptions& opt) {
  if (opt.days == 0 || opt.nodes == 0) {
    throw std::invalid_argument("synthetic data needs at least one day and one node");
  }
  SyntheticCommunity c;
  std::mt19937_64 master(opt.seed);

  for (std::size_t i = 0; i < kPlants.size(); ++i) {
    std::mt19937_64 rng(master());
    c.pv.emplace_back("pv" + std::to_string(i + 1), ProfileKind::generation,
                      pv_series(kPlants[i], opt.days, rng), opt.start_epoch_s, 0);
    c.pv_kwp.push_back(kPlants[i].kwp);
    c.pv_cost_eur.push_back(kPlants[i].cost_eur);
  }

  std::vector<std::size_t> assignment;
  for (std::size_t x = 0; x < opt.nodes; ++x) {
    assignment.push_back(x < kPlants.size() ? x
                                            : std::uniform_int_distribution<std::size_t>(
                                                  0, kPlants.size() - 1)(master));
  }
  std::shuffle(assignment.begin(), assignment.end(), master);
  c.pv_of_node = assignment;

  std::vector<double> costs;
  std::vector<double> annual;
  for (std::size_t x = 0; x < opt.nodes; ++x) {
    std::mt19937_64 rng(master());
    std::vector<double> consumption = load_series(kHomes[x % kHomes.size()], opt.days, rng);
    for (double& p : consumption) p = 0.0 - p;
    c.loads.emplace_back("home" + std::to_string(x + 1) + "/load", ProfileKind::load,
                         std::move(consumption), opt.start_epoch_s, 0);

    NodeConfig n;
    n.id = "home" + std::to_string(x + 1);
    n.pv_peak_kw = kPlants[c.pv_of_node[x]].kwp;
    n.pv_install_cost_eur = kPlants[c.pv_of_node[x]].cost_eur;
    n.initial_soe = 0.5;
    c.config.nodes.push_back(n);
    costs.push_back(n.pv_install_cost_eur);
    annual.push_back(c.pv[c.pv_of_node[x]].mean() * 24.0 * 365.0);
  }
  const double u_pv = compute_u_pv(costs, annual);
  for (NodeConfig& n : c.config.nodes) n.u_pv = u_pv;
  c.config.validate();
  return c;
}

void write_synthetic(const SyntheticCommunity& community, const SyntheticOptions& opt,
                     const std::filesystem::path& dir) {
  using nlohmann::ordered_json;
  for (const PowerProfile& p : community.pv) {
    write_profile_csv(dir / "pv" / (p.id() + ".csv"), p, opt.offset_minutes);
  }
  ordered_json nodes = ordered_json::array();
  for (std::size_t x = 0; x < community.loads.size(); ++x) {
    const NodeConfig& n = community.config.nodes[x];
    write_profile_csv(dir / "loads" / (n.id + ".csv"), community.loads[x], opt.offset_minutes);
    nodes.push_back({{"id", n.id},
                     {"generation_csv", "pv/" + community.pv[community.pv_of_node[x]].id() + ".csv"},
                     {"load_csv", "loads/" + n.id + ".csv"},
                     {"pv_peak_kw", n.pv_peak_kw},
                     {"pv_install_cost_eur", n.pv_install_cost_eur},
                     {"initial_soe", n.initial_soe}});
  }
  const std::size_t sim_day = opt.days >= 2 ? 1 : 0;
  ordered_json doc = {
      {"name", "synthetic-seed" + std::to_string(opt.seed)},
      {"seed", opt.seed},
      {"mode", "auto"},
      {"forecaster", "seasonal_naive"},
      {"simulation", {{"start_slot", sim_day * kSlotsPerDay}, {"slots", kSlotsPerDay}}},
      {"training", {{"start_slot", 24}, {"slots", 48}, {"repeats", 10}}},
      {"ga", {{"population", 100}, {"generations", 50}, {"seed", opt.seed}}},
      {"nodes", nodes},
  };
  detail::write_text_file(dir / "scenario.json", doc.dump(2) + "\n");
}

}  // namespace rechems
