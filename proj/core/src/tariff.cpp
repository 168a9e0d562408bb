#include "rechems/tariff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rechems/units.hpp"

namespace rechems {

void TariffConfig::validate() const {
  auto non_negative = [](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument(std::string("tariff: ") + name + " must be >= 0");
    }
  };
  non_negative(tp_rec, "tp_rec");
  non_negative(tras_e, "tras_e");
  non_negative(btau_max, "btau_max");
  non_negative(pr3, "pr3");
  non_negative(u_pur, "u_pur");
  non_negative(u_pur_fixed, "u_pur_fixed");
  if (!std::isfinite(vat) || vat < 0.0 || vat >= 1.0) {
    throw std::invalid_argument("tariff: vat must be in [0, 1)");
  }
}

CashFlow& CashFlow::operator+=(const CashFlow& o) {
  i_sha += o.i_sha;
  i_ret += o.i_ret;
  i_sel += o.i_sel;
  h_ess += o.h_ess;
  h_pur += o.h_pur;
  h_ins += o.h_ins;
  return *this;
}

double shared_energy(double e_gen_kwh, double e_dra_kwh) { return std::min(e_gen_kwh, e_dra_kwh); }

double drawn_energy(double p_load_kw, double p_gl_s_kw, double dt_h) {
  return (std::abs(p_load_kw) + std::max(p_gl_s_kw, 0.0)) * dt_h;
}

double incentive_shared(double e_sha_kwh, const TariffConfig& cfg) { return cfg.tp_rec * e_sha_kwh; }

double incentive_return(double e_sha_kwh, const TariffConfig& cfg) { return cfg.cu_afm() * e_sha_kwh; }

double revenue_sale(double p_gl_n_kw, double dt_h, const TariffConfig& cfg) {
  return p_gl_n_kw > 0.0 ? cfg.pr3 * dt_h * p_gl_n_kw : 0.0;
}

double cost_purchase(double p_gl_n_kw, double dt_h, const TariffConfig& cfg) {
  const double variable = p_gl_n_kw < 0.0 ? cfg.u_pur * -p_gl_n_kw * dt_h : 0.0;
  return (variable + cfg.u_pur_fixed) * (1.0 + cfg.vat);
}

double cost_installation(double p_gen_kw, double dt_h, double u_pv) {
  return u_pv * std::abs(p_gen_kw) * dt_h;
}

double compute_u_pv(std::span<const double> install_cost_eur,
                    std::span<const double> annual_generation_kwh) {
  if (install_cost_eur.size() != annual_generation_kwh.size() || install_cost_eur.empty()) {
    throw std::invalid_argument("compute_u_pv: need one install cost per annual generation");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < install_cost_eur.size(); ++i) {
    if (!(annual_generation_kwh[i] > 0.0)) {
      throw std::invalid_argument("compute_u_pv: node " + std::to_string(i) +
                                  " has no annual generation");
    }
    sum += install_cost_eur[i] / annual_generation_kwh[i];
  }
  return sum / static_cast<double>(install_cost_eur.size());
}

SlotSettlement settle_slot(std::span<const NodeFlows> nodes, double dt_h, const TariffConfig& cfg) {
  SlotSettlement s;
  for (const NodeFlows& n : nodes) {
    s.e_gen_kwh += energy_of(n.p_gen_kw, dt_h);
    s.e_dra_kwh += drawn_energy(n.p_load_kw, n.p_gl_s_kw, dt_h);
    s.cash.i_sel += revenue_sale(n.p_gl_n_kw, dt_h, cfg);
    s.cash.h_ess += n.wear_cost_eur;
    s.cash.h_pur += cost_purchase(n.p_gl_n_kw, dt_h, cfg);
    s.cash.h_ins += cost_installation(n.p_gen_kw, dt_h, n.u_pv);
  }
  s.e_sha_kwh = shared_energy(s.e_gen_kwh, s.e_dra_kwh);
  s.cash.i_sha = incentive_shared(s.e_sha_kwh, cfg);
  s.cash.i_ret = incentive_return(s.e_sha_kwh, cfg);
  return s;
}

void HourlySharing::apply(SlotSettlement& s, std::size_t slot_index, bool flush,
                          const TariffConfig& cfg) {
  gen_kwh_ += s.e_gen_kwh;
  dra_kwh_ += s.e_dra_kwh;
  const bool closes_hour = slot_index % kSlotsPerHour == kSlotsPerHour - 1;
  if (closes_hour || flush) {
    s.e_sha_kwh = shared_energy(gen_kwh_, dra_kwh_);
    gen_kwh_ = 0.0;
    dra_kwh_ = 0.0;
  } else {
    s.e_sha_kwh = 0.0;
  }
  s.cash.i_sha = incentive_shared(s.e_sha_kwh, cfg);
  s.cash.i_ret = incentive_return(s.e_sha_kwh, cfg);
}

}  // namespace rechems
