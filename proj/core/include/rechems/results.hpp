#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rechems/tariff.hpp"

namespace rechems {

struct NodeSlotResult {
  double p_gen_kw = 0.0;
  double p_load_kw = 0.0;
  double p_gl_star_kw = 0.0;
  double alpha = 1.0;
  double p_gl_s_kw = 0.0;
  double p_gl_n_kw = 0.0;
  double soe_before = 0.0;
  double soe_after = 0.0;
  double wear_cost_eur = 0.0;
};

/// Outcome of one simulated slot for the whole community.
struct TimeslotResult {
  std::size_t slot = 0;
  std::vector<NodeSlotResult> nodes;
  SlotSettlement settlement;

  /// Cost minus revenue of the slot (EUR); lower is better.
  [[nodiscard]] double objective() const { return settlement.cash.net_cost(); }
};

/// Sum of slot objectives in slot order.
[[nodiscard]] double objective(std::span<const TimeslotResult> results);

}  // namespace rechems
