#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "rechems/ess.hpp"
#include "rechems/tariff.hpp"

using namespace rechems;

TEST(Tariff, SharedEnergy) {
  EXPECT_EQ(shared_energy(1.0, 0.7), 0.7);
  EXPECT_EQ(shared_energy(0.0, 5.0), 0.0);
  EXPECT_EQ(shared_energy(0.4, 0.4), 0.4);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng), b = u(rng);
    EXPECT_LE(shared_energy(a, b), a);
    EXPECT_LE(shared_energy(a, b), b);
  }
}

TEST(Tariff, DrawnEnergy) {
  EXPECT_DOUBLE_EQ(drawn_energy(-2.0, 0.0, 0.25), 0.5);
  EXPECT_DOUBLE_EQ(drawn_energy(-2.0, 1.0, 0.25), 0.75);
  EXPECT_DOUBLE_EQ(drawn_energy(-2.0, -1.0, 0.25), 0.5);
}

TEST(Tariff, IncentiveShared) {
  TariffConfig t;
  EXPECT_NEAR(incentive_shared(0.7, t), 0.077, 1e-12);
  EXPECT_EQ(incentive_shared(0.0, t), 0.0);
  EXPECT_DOUBLE_EQ(incentive_shared(1.4, t), 2.0 * incentive_shared(0.7, t));
}

TEST(Tariff, IncentiveReturn) {
  TariffConfig t;
  EXPECT_NEAR(incentive_return(1.0, t), 0.00822, 1e-12);
  EXPECT_EQ(incentive_return(0.0, t), 0.0);
  EXPECT_LT(incentive_return(1.0, t), incentive_shared(1.0, t));
}

TEST(Tariff, RevenueSale) {
  TariffConfig t;
  EXPECT_NEAR(revenue_sale(2.0, 0.25, t), 0.05, 1e-12);
  EXPECT_EQ(revenue_sale(-2.0, 0.25, t), 0.0);
  EXPECT_EQ(revenue_sale(0.0, 0.25, t), 0.0);
}

TEST(Tariff, CostPurchase) {
  TariffConfig t;
  EXPECT_NEAR(cost_purchase(-2.0, 0.25, t), 0.1199, 1e-12);
  EXPECT_NEAR(cost_purchase(3.0, 0.25, t), 0.0033, 1e-12);
  TariffConfig no_vat = t;
  no_vat.vat = 0.0;
  EXPECT_NEAR(cost_purchase(-2.0, 0.25, t) / cost_purchase(-2.0, 0.25, no_vat), 1.1, 1e-12);
}

TEST(Tariff, CostInstallation) {
  EXPECT_EQ(cost_installation(0.0, 0.25, 0.12), 0.0);
  EXPECT_NEAR(cost_installation(3.0, 0.25, 0.12), 0.09, 1e-12);
  EXPECT_NEAR(cost_installation(6.0, 0.25, 0.12), 2.0 * cost_installation(3.0, 0.25, 0.12), 1e-15);
}

TEST(Tariff, ComputeUpv) {
  std::vector<double> cost = {6000.0};
  std::vector<double> gen = {6000.0};
  EXPECT_DOUBLE_EQ(compute_u_pv(cost, gen), 1.0);
  std::vector<double> c2 = {800.0, 1200.0};
  std::vector<double> g2 = {1000.0, 1000.0};
  EXPECT_DOUBLE_EQ(compute_u_pv(c2, g2), 1.0);
  std::vector<double> bad = {0.0};
  EXPECT_THROW((void)compute_u_pv(cost, bad), std::invalid_argument);
  EXPECT_THROW((void)compute_u_pv(c2, gen), std::invalid_argument);
}

TEST(Tariff, ValidateRejectsNegative) {
  TariffConfig t;
  t.tp_rec = -1.0;
  EXPECT_THROW(t.validate(), std::invalid_argument);
  t = TariffConfig{};
  t.vat = 1.0;
  EXPECT_THROW(t.validate(), std::invalid_argument);
}

TEST(Settlement, ZeroFlowsOnlyFixedCharges) {
  TariffConfig t;
  std::vector<NodeFlows> nodes(3);
  const SlotSettlement s = settle_slot(nodes, 0.25, t);
  EXPECT_EQ(s.cash.i_sha, 0.0);
  EXPECT_EQ(s.cash.i_ret, 0.0);
  EXPECT_EQ(s.cash.i_sel, 0.0);
  EXPECT_EQ(s.cash.h_ess, 0.0);
  EXPECT_EQ(s.cash.h_ins, 0.0);
  EXPECT_NEAR(s.cash.h_pur, 3 * 0.003 * 1.1, 1e-12);
}

TEST(Settlement, SellerAndBuyerShare) {
  TariffConfig t;
  std::vector<NodeFlows> nodes(2);
  nodes[0] = {3.0, -0.5, 0.0, 2.5, 0.0, 0.1};
  nodes[1] = {0.0, -2.0, 0.0, -2.0, 0.0, 0.1};
  const SlotSettlement s = settle_slot(nodes, 0.25, t);
  EXPECT_GT(s.e_sha_kwh, 0.0);
  EXPECT_GT(s.cash.i_sha, 0.0);
  EXPECT_GT(s.cash.i_ret, 0.0);
  std::vector<oracle::NodeRow> rows = {{3.0, -0.5, 0.0, 2.5, 0.0, 0.1}, {0.0, -2.0, 0.0, -2.0, 0.0, 0.1}};
  const oracle::Sheet o = oracle::settle(rows, 0.25, oracle::Tariff{});
  EXPECT_NEAR(s.e_sha_kwh, o.e_sha, 1e-12);
  EXPECT_NEAR(s.cash.net_cost(), o.net(), 1e-12);
}

TEST(Settlement, DoublingFlowsDoublesVariableParts) {
  TariffConfig t;
  std::vector<NodeFlows> a(2), b(2);
  a[0] = {3.0, -0.5, 1.0, 1.5, 0.02, 0.1};
  a[1] = {0.5, -2.0, -0.5, -1.0, 0.01, 0.1};
  for (std::size_t i = 0; i < 2; ++i) {
    b[i] = {2 * a[i].p_gen_kw, 2 * a[i].p_load_kw, 2 * a[i].p_gl_s_kw, 2 * a[i].p_gl_n_kw,
            2 * a[i].wear_cost_eur, a[i].u_pv};
  }
  const SlotSettlement s1 = settle_slot(a, 0.25, t);
  const SlotSettlement s2 = settle_slot(b, 0.25, t);
  const double fixed = 2 * t.u_pur_fixed * (1 + t.vat);
  EXPECT_NEAR(s2.cash.i_sha, 2 * s1.cash.i_sha, 1e-12);
  EXPECT_NEAR(s2.cash.i_ret, 2 * s1.cash.i_ret, 1e-12);
  EXPECT_NEAR(s2.cash.i_sel, 2 * s1.cash.i_sel, 1e-12);
  EXPECT_NEAR(s2.cash.h_ess, 2 * s1.cash.h_ess, 1e-12);
  EXPECT_NEAR(s2.cash.h_ins, 2 * s1.cash.h_ins, 1e-12);
  EXPECT_NEAR(s2.cash.h_pur - fixed, 2 * (s1.cash.h_pur - fixed), 1e-12);
}

// Two nodes, four slots: each CashFlow component against the spreadsheet oracle.
TEST(Settlement, TwoNodesFourSlotsMatchSpreadsheet) {
  TariffConfig t;
  EssParams e;
  const double u_pv = 0.118;
  const std::array<std::array<double, 2>, 4> gen = {{{0.0, 0.0}, {2.5, 1.0}, {4.0, 3.2}, {1.2, 0.0}}};
  const std::array<std::array<double, 2>, 4> load = {{{-0.8, -1.4}, {-0.6, -2.9}, {-1.0, -0.5}, {-2.2, -1.1}}};
  const std::array<std::array<double, 2>, 4> alpha = {{{1.0, 0.5}, {0.3, 1.0}, {1.0, 0.0}, {0.7, 1.0}}};
  std::array<double, 2> soe = {0.5, 0.3};
  oracle::Battery b;
  for (std::size_t k = 0; k < 4; ++k) {
    std::vector<NodeFlows> nodes;
    std::vector<oracle::NodeRow> rows;
    for (std::size_t n = 0; n < 2; ++n) {
      const double p_star = gen[k][n] + load[k][n];
      const oracle::Flows f = oracle::dispatch(p_star, soe[n], alpha[k][n], 0.25, b);
      const double next = oracle::soe_next(soe[n], f.battery, 0.25, b);
      const double wear = f.battery == 0.0 ? 0.0 : oracle::wear_trapezoid(soe[n], next, f.battery, 0.25, b);
      nodes.push_back({gen[k][n], load[k][n], f.battery, f.grid, wear, u_pv});
      rows.push_back({gen[k][n], load[k][n], f.battery, f.grid, wear, u_pv});
      soe[n] = next;
    }
    const SlotSettlement s = settle_slot(nodes, 0.25, t);
    const oracle::Sheet o = oracle::settle(rows, 0.25, oracle::Tariff{});
    EXPECT_NEAR(s.cash.i_sha, o.i_sha, 1e-9) << "slot " << k;
    EXPECT_NEAR(s.cash.i_ret, o.i_ret, 1e-9) << "slot " << k;
    EXPECT_NEAR(s.cash.i_sel, o.i_sel, 1e-9) << "slot " << k;
    EXPECT_NEAR(s.cash.h_ess, o.h_ess, 1e-9) << "slot " << k;
    EXPECT_NEAR(s.cash.h_pur, o.h_pur, 1e-9) << "slot " << k;
    EXPECT_NEAR(s.cash.h_ins, o.h_ins, 1e-9) << "slot " << k;
    EXPECT_NEAR(s.e_sha_kwh, std::min(o.e_gen, o.e_dra), 1e-12) << "slot " << k;
    EXPECT_NEAR(s.cash.revenue(), s.cash.i_sha + s.cash.i_ret + s.cash.i_sel, 0.0);
    EXPECT_NEAR(s.cash.cost(), s.cash.h_ess + s.cash.h_pur + s.cash.h_ins, 0.0);
  }
  (void)e;
}

TEST(Settlement, NetCostMonotoneInPrices) {
  std::vector<NodeFlows> nodes(2);
  nodes[0] = {3.0, -0.5, 0.5, 2.0, 0.03, 0.1};
  nodes[1] = {0.0, -2.0, -0.5, -1.5, 0.02, 0.1};
  TariffConfig t;
  const double base = settle_slot(nodes, 0.25, t).cash.net_cost();
  TariffConfig up = t;
  up.tp_rec += 0.01;
  EXPECT_LE(settle_slot(nodes, 0.25, up).cash.net_cost(), base);
  up = t;
  up.pr3 += 0.01;
  EXPECT_LE(settle_slot(nodes, 0.25, up).cash.net_cost(), base);
  up = t;
  up.u_pur += 0.01;
  EXPECT_GE(settle_slot(nodes, 0.25, up).cash.net_cost(), base);
}

TEST(Settlement, ZeroTariffLeavesWearOnly) {
  TariffConfig t{0, 0, 0, 0, 0, 0, 0};
  std::vector<NodeFlows> nodes(2);
  nodes[0] = {3.0, -0.5, 0.5, 2.0, 0.03, 0.0};
  nodes[1] = {0.0, -2.0, -0.5, -1.5, 0.02, 0.0};
  EXPECT_NEAR(settle_slot(nodes, 0.25, t).cash.net_cost(), 0.05, 1e-15);
}

TEST(Settlement, HourlySharingCreditsAtHourEnd) {
  TariffConfig t;
  HourlySharing hourly;
  double gen = 0.0, dra = 0.0, credited = 0.0;
  const std::array<std::pair<double, double>, 4> slots = {{{2.0, 0.0}, {0.0, 3.0}, {1.0, 1.0}, {0.0, 0.5}}};
  for (std::size_t k = 0; k < 4; ++k) {
    std::vector<NodeFlows> nodes(1);
    nodes[0].p_gen_kw = slots[k].first;
    nodes[0].p_load_kw = -slots[k].second;
    nodes[0].p_gl_n_kw = slots[k].first - slots[k].second;
    SlotSettlement s = settle_slot(nodes, 0.25, t);
    gen += slots[k].first * 0.25;
    dra += slots[k].second * 0.25;
    hourly.apply(s, k, false, t);
    if (k < 3) EXPECT_EQ(s.cash.i_sha, 0.0);
    credited += s.cash.i_sha;
  }
  EXPECT_NEAR(credited, t.tp_rec * std::min(gen, dra), 1e-12);
}
