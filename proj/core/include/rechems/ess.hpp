#pragma once

#include <optional>

namespace rechems {

/// How efficiency losses enter the state-of-energy update.
enum class SoeUpdateMode {
  /// Losses scale only the energy increment; zero flow leaves SoE unchanged.
  delta_efficiency,
  /// The whole updated SoE is scaled by eta (charging) or 1/eta (otherwise),
  /// then clamped into the SoE window. Kept for reproduction studies only.
  literal,
};

/// Battery constants for one node. Defaults describe the 5 kWh / 7 kW unit
/// used throughout the reference community.
struct EssParams {
  double capacity_kwh = 5.0;
  double efficiency = 0.98;
  double max_power_kw = 7.0;
  double soe_min = 0.15;
  double soe_max = 0.95;
  double acc_scale = 694.0;      // a: cycles at full depth of discharge
  double acc_exponent = 0.795;   // b
  double install_price_eur = 5000.0;
  SoeUpdateMode soe_update_mode = SoeUpdateMode::delta_efficiency;

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

/// Energy the battery can still absorb before reaching soe_max (kWh).
[[nodiscard]] double remaining_capacity(double soe, const EssParams& ess);

/// Energy the battery can still deliver before reaching soe_min (kWh).
[[nodiscard]] double remaining_energy(double soe, const EssParams& ess);

/// Advances the state of energy by one slot of battery power `p_gl_s_kw`
/// (positive charges). `net_power_kw` selects the branch in literal mode and
/// defaults to the battery power sign.
///
/// In delta-efficiency mode a result outside [soe_min, soe_max] by more than
/// kSoeTolerance throws std::logic_error: the dispatcher sized the flow wrong.
[[nodiscard]] double soe_update(double soe, double p_gl_s_kw, double dt_h, const EssParams& ess,
                                std::optional<double> net_power_kw = std::nullopt);

/// Average wear cost density W(SoE) in EUR/kWh.
[[nodiscard]] double wear_cost_density(double soe, const EssParams& ess);

/// Trapezoidal wear charge for moving from soe_k to soe_k1 with |p| over dt.
[[nodiscard]] double wear_cost(double soe_k, double soe_k1, double p_gl_s_kw, double dt_h,
                               const EssParams& ess);

/// Achievable cycle count at the given depth of discharge, a / DoD^b.
[[nodiscard]] double acc_cycles(double depth_of_discharge, const EssParams& ess);

}  // namespace rechems
