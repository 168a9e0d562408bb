#pragma once

#include <span>

namespace rechems {

/// Period over which community generation and drawn energy are matched.
enum class SharingPeriod { slot, hour };

/// Legislation constants, all in EUR/kWh unless noted.
///
/// The premium tariff and the returned tariff components are published as
/// EUR/MWh figures (110, 7.61, 0.61); they are stored here per kWh.
/// The sale price has no published reference value and must be configured
/// per scenario; 0.10 EUR/kWh is only a test default.
struct TariffConfig {
  double tp_rec = 0.110;          // premium tariff on shared energy
  double tras_e = 0.00761;        // transmission component returned
  double btau_max = 0.00061;      // max distribution component returned
  double pr3 = 0.10;              // sale price of energy fed to the grid
  double u_pur = 0.212;           // purchase unit price
  double u_pur_fixed = 0.003;     // EUR per node per slot
  double vat = 0.10;              // fraction applied to purchases
  SharingPeriod sharing_period = SharingPeriod::slot;

  [[nodiscard]] double cu_afm() const { return tras_e + btau_max; }
  void validate() const;
};

/// Revenue and cost components of one slot (or one horizon), all >= 0 EUR.
struct CashFlow {
  double i_sha = 0.0;
  double i_ret = 0.0;
  double i_sel = 0.0;
  double h_ess = 0.0;
  double h_pur = 0.0;
  double h_ins = 0.0;

  [[nodiscard]] double revenue() const { return i_sha + i_ret + i_sel; }
  [[nodiscard]] double cost() const { return h_ess + h_pur + h_ins; }
  /// Cost minus revenue; negative means the community made a profit.
  [[nodiscard]] double net_cost() const { return cost() - revenue(); }

  CashFlow& operator+=(const CashFlow& o);
};

[[nodiscard]] double shared_energy(double e_gen_kwh, double e_dra_kwh);
/// Consumption plus energy being stored counts as drawn; discharge does not.
[[nodiscard]] double drawn_energy(double p_load_kw, double p_gl_s_kw, double dt_h);
[[nodiscard]] double incentive_shared(double e_sha_kwh, const TariffConfig& cfg);
[[nodiscard]] double incentive_return(double e_sha_kwh, const TariffConfig& cfg);
[[nodiscard]] double revenue_sale(double p_gl_n_kw, double dt_h, const TariffConfig& cfg);
[[nodiscard]] double cost_purchase(double p_gl_n_kw, double dt_h, const TariffConfig& cfg);
[[nodiscard]] double cost_installation(double p_gen_kw, double dt_h, double u_pv);

/// Mean over nodes of install cost / annual generation, in EUR/kWh.
/// Throws std::invalid_argument on size mismatch or a node without generation.
[[nodiscard]] double compute_u_pv(std::span<const double> install_cost_eur,
                                  std::span<const double> annual_generation_kwh);

/// Settled flows of one node in one slot.
struct NodeFlows {
  double p_gen_kw = 0.0;
  double p_load_kw = 0.0;
  double p_gl_s_kw = 0.0;
  double p_gl_n_kw = 0.0;
  double wear_cost_eur = 0.0;
  double u_pv = 0.0;
};

struct SlotSettlement {
  CashFlow cash;
  double e_gen_kwh = 0.0;
  double e_dra_kwh = 0.0;
  double e_sha_kwh = 0.0;
};

/// Community-level settlement of one slot. Generation and drawn energy are
/// summed across nodes before matching; every other term is per node.
/// Shared energy is matched within the slot regardless of sharing_period;
/// hourly matching is handled by HourlySharing.
[[nodiscard]] SlotSettlement settle_slot(std::span<const NodeFlows> nodes, double dt_h,
                                         const TariffConfig& cfg);

/// Accumulates generation and drawn energy over a clock hour and credits the
/// shared-energy incentives when the hour closes.
class HourlySharing {
 public:
  /// Replaces the per-slot sharing terms of `s` with the hourly credit, which
  /// is non-zero only on the last slot of an hour or when `flush` is set.
  void apply(SlotSettlement& s, std::size_t slot_index, bool flush, const TariffConfig& cfg);

 private:
  double gen_kwh_ = 0.0;
  double dra_kwh_ = 0.0;
};

}  // namespace rechems
