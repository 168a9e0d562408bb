#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rechems/ess.hpp"
#include "rechems/tariff.hpp"

namespace rechems {

/// One community member: battery, PV plant economics and starting SoE.
struct NodeConfig {
  std::string id;
  EssParams ess;
  double pv_peak_kw = 0.0;
  double pv_install_cost_eur = 6000.0;
  double u_pv = 0.0;  // EUR/kWh of generation, see compute_u_pv
  double initial_soe = 0.5;

  void validate() const;
};

struct RecConfig {
  std::vector<NodeConfig> nodes;
  TariffConfig tariff;

  [[nodiscard]] std::size_t node_count() const { return nodes.size(); }
  [[nodiscard]] std::vector<EssParams> batteries() const;
  [[nodiscard]] std::vector<double> initial_soe() const;
  /// Validates every node and the tariff; throws std::invalid_argument.
  void validate() const;
};

}  // namespace rechems
