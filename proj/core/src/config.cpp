#include "rechems/config.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace rechems {

void NodeConfig::validate() const {
  const std::string where = "node '" + id + "': ";
  if (id.empty()) throw std::invalid_argument("node id must not be empty");
  try {
    ess.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(where + e.what());
  }
  if (!(pv_peak_kw >= 0.0) || !std::isfinite(pv_peak_kw)) {
    throw std::invalid_argument(where + "pv_peak_kw must be >= 0");
  }
  if (!(pv_install_cost_eur > 0.0) || !std::isfinite(pv_install_cost_eur)) {
    throw std::invalid_argument(where + "pv_install_cost_eur must be > 0");
  }
  if (!(u_pv >= 0.0) || !std::isfinite(u_pv)) throw std::invalid_argument(where + "u_pv must be >= 0");
  if (!(initial_soe >= ess.soe_min && initial_soe <= ess.soe_max)) {
    throw std::invalid_argument(where + "initial_soe must lie in [soe_min, soe_max]");
  }
}

std::vector<EssParams> RecConfig::batteries() const {
  std::vector<EssParams> out;
  out.reserve(nodes.size());
  for (const NodeConfig& n : nodes) out.push_back(n.ess);
  return out;
}

std::vector<double> RecConfig::initial_soe() const {
  std::vector<double> out;
  out.reserve(nodes.size());
  for (const NodeConfig& n : nodes) out.push_back(n.initial_soe);
  return out;
}

void RecConfig::validate() const {
  if (nodes.empty()) throw std::invalid_argument("community needs at least one node");
  std::set<std::string> ids;
  for (const NodeConfig& n : nodes) {
    n.validate();
    if (!ids.insert(n.id).second) throw std::invalid_argument("duplicate node id '" + n.id + "'");
  }
  tariff.validate();
}

}  // namespace rechems
