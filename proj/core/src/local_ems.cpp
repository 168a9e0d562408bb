#include "rechems/local_ems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rechems {

Dispatch dispatch(double p_gl_star_kw, double soe, double alpha, double dt_h,
                  const EssParams& ess) {
  if (!std::isfinite(p_gl_star_kw) || !std::isfinite(soe) || !std::isfinite(alpha) ||
      !std::isfinite(dt_h)) {
    throw std::invalid_argument("dispatch: non-finite input");
  }
  if (alpha < 0.0 || alpha > 1.0) {
    throw std::invalid_argument("dispatch: alpha must be in [0, 1]");
  }
  if (!(dt_h > 0.0)) throw std::invalid_argument("dispatch: dt must be > 0");

  Dispatch d;
  if (p_gl_star_kw > 0.0) {
    const double headroom = remaining_capacity(soe, ess) / (ess.efficiency * dt_h);
    d.p_gl_s_kw = std::min({alpha * p_gl_star_kw, headroom, ess.max_power_kw});
  } else if (p_gl_star_kw < 0.0) {
    const double reserve = remaining_energy(soe, ess) * ess.efficiency / dt_h;
    d.p_gl_s_kw = -std::min({alpha * -p_gl_star_kw, reserve, ess.max_power_kw});
  } else {
    return d;
  }
  d.p_gl_n_kw = p_gl_star_kw - d.p_gl_s_kw;
  return d;
}

std::vector<LocalDecision> local_pass(std::span<const double> soe,
                                      std::span<const double> p_gl_star_kw, double dt_h,
                                      std::span<const EssParams> ess) {
  if (soe.size() != p_gl_star_kw.size() || soe.size() != ess.size()) {
    throw std::invalid_argument("local_pass: one SoE, net power and battery per node required");
  }
  std::vector<LocalDecision> out(soe.size());
  for (std::size_t x = 0; x < soe.size(); ++x) {
    out[x].flows = dispatch(p_gl_star_kw[x], soe[x], 1.0, dt_h, ess[x]);
    out[x].projected_soe = soe_update(soe[x], out[x].flows.p_gl_s_kw, dt_h, ess[x], p_gl_star_kw[x]);
  }
  return out;
}

}  // namespace rechems
