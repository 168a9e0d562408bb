#include "rechems/ess.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rechems/units.hpp"

namespace rechems {

void EssParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("ess: ") + what);
  };
  require(std::isfinite(capacity_kwh) && capacity_kwh > 0.0, "capacity_kwh must be > 0");
  require(std::isfinite(efficiency) && efficiency > 0.0 && efficiency <= 1.0,
          "efficiency must be in (0, 1]");
  require(std::isfinite(max_power_kw) && max_power_kw > 0.0, "max_power_kw must be > 0");
  require(soe_min >= 0.0 && soe_min < soe_max && soe_max <= 1.0,
          "require 0 <= soe_min < soe_max <= 1");
  require(std::isfinite(acc_scale) && acc_scale > 0.0, "acc_scale must be > 0");
  require(std::isfinite(acc_exponent) && acc_exponent > 0.0, "acc_exponent must be > 0");
  require(std::isfinite(install_price_eur) && install_price_eur >= 0.0,
          "install_price_eur must be >= 0");
}

double remaining_capacity(double soe, const EssParams& ess) {
  return std::max(0.0, ess.capacity_kwh * (ess.soe_max - soe));
}

double remaining_energy(double soe, const EssParams& ess) {
  return std::max(0.0, ess.capacity_kwh * (soe - ess.soe_min));
}

namespace {

double snap_into_window(double soe, const EssParams& ess) {
  if (soe > ess.soe_max) {
    if (soe - ess.soe_max > kSoeTolerance) {
      throw std::logic_error("soe_update: SoE " + std::to_string(soe) + " exceeds soe_max");
    }
    return ess.soe_max;
  }
  if (soe < ess.soe_min) {
    if (ess.soe_min - soe > kSoeTolerance) {
      throw std::logic_error("soe_update: SoE " + std::to_string(soe) + " below soe_min");
    }
    return ess.soe_min;
  }
  return soe;
}

}  // namespace

double soe_update(double soe, double p_gl_s_kw, double dt_h, const EssParams& ess,
                  std::optional<double> net_power_kw) {
  const double moved = p_gl_s_kw * dt_h / ess.capacity_kwh;
  if (ess.soe_update_mode == SoeUpdateMode::literal) {
    const bool charging_branch = net_power_kw.value_or(p_gl_s_kw) > 0.0;
    const double next = charging_branch ? (soe + moved) * ess.efficiency
                                        : (soe - std::abs(moved)) / ess.efficiency;
    return std::clamp(next, ess.soe_min, ess.soe_max);
  }
  if (p_gl_s_kw > 0.0) return snap_into_window(soe + ess.efficiency * moved, ess);
  if (p_gl_s_kw < 0.0) return snap_into_window(soe + moved / ess.efficiency, ess);
  return soe;
}

double wear_cost_density(double soe, const EssParams& ess) {
  if (!(soe < ess.soe_max + kSoeTolerance) || soe >= 1.0) {
    throw std::domain_error("wear_cost_density: SoE " + std::to_string(soe) +
                            " at or above soe_max");
  }
  const double scale = ess.install_price_eur / (2.0 * ess.capacity_kwh * ess.efficiency);
  return scale * ess.acc_exponent * std::pow(1.0 - soe, ess.acc_exponent - 1.0) / ess.acc_scale;
}

double wear_cost(double soe_k, double soe_k1, double p_gl_s_kw, double dt_h,
                 const EssParams& ess) {
  if (p_gl_s_kw == 0.0) return 0.0;
  return dt_h / 2.0 * (wear_cost_density(soe_k, ess) + wear_cost_density(soe_k1, ess)) *
         std::abs(p_gl_s_kw);
}

double acc_cycles(double depth_of_discharge, const EssParams& ess) {
  if (!(depth_of_discharge > 0.0) || depth_of_discharge > 1.0) {
    throw std::domain_error("acc_cycles: depth of discharge must be in (0, 1]");
  }
  return ess.acc_scale / std::pow(depth_of_discharge, ess.acc_exponent);
}

}  // namespace rechems
