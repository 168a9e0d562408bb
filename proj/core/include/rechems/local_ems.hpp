#pragma once

#include <span>
#include <vector>

#include "rechems/ess.hpp"

namespace rechems {

/// Battery and grid flows of one node for one slot.
/// p_gl_s_kw > 0 charges the battery; p_gl_n_kw > 0 sells to the grid.
struct Dispatch {
  double p_gl_s_kw = 0.0;
  double p_gl_n_kw = 0.0;
};

/// Self-consumption dispatcher for one node.
///
/// A fraction `alpha` of the surplus (or deficit) is routed to (or from) the
/// battery, clamped by the energy headroom of the pre-slot SoE and by the
/// converter power limit; the remainder goes to the grid. The headroom rates
/// include the efficiency so that the following soe_update stays in bounds.
/// The battery is only charged from local surplus and never discharges into
/// the grid.
///
/// Throws std::invalid_argument for alpha outside [0, 1] or non-finite inputs.
[[nodiscard]] Dispatch dispatch(double p_gl_star_kw, double soe, double alpha, double dt_h,
                                const EssParams& ess);

struct LocalDecision {
  Dispatch flows;
  double projected_soe = 0.0;
};

/// Every node plans alone with alpha = 1; the projected SoEs are what the
/// community-level controller sees before deciding.
[[nodiscard]] std::vector<LocalDecision> local_pass(std::span<const double> soe,
                                                    std::span<const double> p_gl_star_kw,
                                                    double dt_h,
                                                    std::span<const EssParams> ess);

}  // namespace rechems
