#pragma once

// Reference evaluations written straight from the model equations, kept apart
// from the library code they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

struct Battery {
  double q = 5.0;
  double eta = 0.98;
  double p_max = 7.0;
  double soe_min = 0.15;
  double soe_max = 0.95;
  double a = 694.0;
  double b = 0.795;
  double u = 5000.0;
};

// W(SoE) = u / (2 Q eta) * d(1/ACC)/dDoD, ACC = a / DoD^b, DoD = 1 - SoE,
// evaluated term by term through exp/log.
inline double wear_density(double soe, const Battery& e) {
  const double dod = 1.0 - soe;
  const double prefactor = e.u / (2.0 * e.q * e.eta);
  const double derivative = e.b * std::exp((e.b - 1.0) * std::log(dod)) / e.a;
  return prefactor * derivative;
}

inline double wear_trapezoid(double soe_k, double soe_k1, double p, double dt, const Battery& e) {
  const double left = wear_density(soe_k, e);
  const double right = wear_density(soe_k1, e);
  const double energy = std::fabs(p) * dt;
  return energy * (left + right) / 2.0;
}

inline double wear_midpoint(double soe_k, double soe_k1, double p, double dt, const Battery& e) {
  return std::fabs(p) * dt * wear_density(0.5 * (soe_k + soe_k1), e);
}

inline double soe_next(double soe, double p, double dt, const Battery& e) {
  if (p > 0) return soe + e.eta * p * dt / e.q;
  if (p < 0) return soe + p * dt / (e.q * e.eta);
  return soe;
}

struct Flows {
  double battery = 0.0;
  double grid = 0.0;
};

// Start from the alpha share and cut it back by each limit in turn.
inline Flows dispatch(double p_star, double soe, double alpha, double dt, const Battery& e) {
  Flows f;
  if (p_star == 0.0) return f;
  double magnitude = alpha * std::fabs(p_star);
  if (magnitude > e.p_max) magnitude = e.p_max;
  if (p_star > 0) {
    const double room_kwh = (e.soe_max - soe) * e.q;
    const double room_kw = room_kwh / dt / e.eta;
    if (magnitude > room_kw) magnitude = room_kw;
    f.battery = magnitude;
  } else {
    const double stored_kwh = (soe - e.soe_min) * e.q;
    const double deliverable_kw = stored_kwh * e.eta / dt;
    if (magnitude > deliverable_kw) magnitude = deliverable_kw;
    f.battery = -magnitude;
  }
  f.grid = p_star - f.battery;
  return f;
}

struct Tariff {
  double tp_rec = 0.110;
  double tras_e = 0.00761;
  double btau_max = 0.00061;
  double pr3 = 0.10;
  double u_pur = 0.212;
  double u_pur_fixed = 0.003;
  double vat = 0.10;
};

struct NodeRow {
  double gen = 0.0;
  double load = 0.0;  // <= 0
  double battery = 0.0;
  double grid = 0.0;
  double wear = 0.0;
  double u_pv = 0.0;
};

struct Sheet {
  double e_gen = 0.0;
  double e_dra = 0.0;
  double e_sha = 0.0;
  double i_sha = 0.0;
  double i_ret = 0.0;
  double i_sel = 0.0;
  double h_ess = 0.0;
  double h_pur = 0.0;
  double h_ins = 0.0;
  [[nodiscard]] double net() const { return (h_ess + h_pur + h_ins) - (i_sha + i_ret + i_sel); }
};

// Spreadsheet-style settlement of one slot: one column per quantity, summed
// over the node rows, then the community columns.
inline Sheet settle(const std::vector<NodeRow>& rows, double dt, const Tariff& t) {
  Sheet s;
  for (const NodeRow& r : rows) {
    const double generated = r.gen * dt;
    const double consumed = -r.load * dt;
    const double stored = r.battery > 0 ? r.battery * dt : 0.0;
    s.e_gen += generated;
    s.e_dra += consumed + stored;
    const double sold = r.grid > 0 ? r.grid * dt : 0.0;
    const double bought = r.grid < 0 ? -r.grid * dt : 0.0;
    s.i_sel += t.pr3 * sold;
    s.h_pur += (t.u_pur * bought + t.u_pur_fixed) * (1.0 + t.vat);
    s.h_ess += r.wear;
    s.h_ins += r.u_pv * std::fabs(r.gen) * dt;
  }
  s.e_sha = s.e_gen < s.e_dra ? s.e_gen : s.e_dra;
  s.i_sha = t.tp_rec * s.e_sha;
  s.i_ret = (t.tras_e + t.btau_max) * s.e_sha;
  return s;
}

// Trapezoid membership with feet a, d and core [b, c].
inline double membership(const std::array<double, 4>& m, double x) {
  const double a = m[0], b = m[1], c = m[2], d = m[3];
  if (x >= b && x <= c) return 1.0;
  if (x > a && x < b) return (x - a) / (b - a);
  if (x > c && x < d) return (d - x) / (d - c);
  return 0.0;
}

struct Mamdani {
  std::array<std::array<double, 4>, 5> in;
  std::array<std::array<double, 4>, 5> out;
  std::array<int, 5> consequent;  // rule i: input term i -> output term consequent[i]
  std::array<double, 5> weight;
};

// Rule-by-rule clip and max, evaluated at a point.
inline double mamdani_aggregate(const Mamdani& m, double x, double y) {
  double mu = 0.0;
  for (int r = 0; r < 5; ++r) {
    const double strength = membership(m.in[r], x) * m.weight[r];
    mu = std::max(mu, std::min(strength, membership(m.out[m.consequent[r]], y)));
  }
  return mu;
}

// Exact centroid of the aggregated shape. Every kink lies on a vertex or where
// two of the involved lines meet, so the shape is linear between consecutive
// candidates; sample two interior points per piece and integrate the line.
// Returns a negative value when nothing fires.
inline double mamdani_centroid(const Mamdani& m, double x) {
  std::vector<std::pair<double, double>> lines = {{0.0, 0.0}, {0.0, 1.0}};  // slope, intercept
  std::vector<double> cuts = {0.0, 1.0};
  for (int r = 0; r < 5; ++r) {
    const double strength = membership(m.in[r], x) * m.weight[r];
    lines.push_back({0.0, strength});
    const auto& o = m.out[m.consequent[r]];
    for (double v : o) cuts.push_back(v);
    if (o[1] > o[0]) lines.push_back({1.0 / (o[1] - o[0]), -o[0] / (o[1] - o[0])});
    if (o[3] > o[2]) lines.push_back({-1.0 / (o[3] - o[2]), o[3] / (o[3] - o[2])});
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const double ds = lines[i].first - lines[j].first;
      if (ds == 0.0) continue;
      const double c = (lines[j].second - lines[i].second) / ds;
      if (c > 0.0 && c < 1.0) cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k], hi = cuts[k + 1], h = hi - lo;
    if (!(h > 0.0)) continue;
    const double q1 = mamdani_aggregate(m, x, lo + 0.25 * h);
    const double q3 = mamdani_aggregate(m, x, lo + 0.75 * h);
    const double y0 = 1.5 * q1 - 0.5 * q3;  // extend the line to the ends
    const double y1 = 1.5 * q3 - 0.5 * q1;
    den += h * (y0 + y1) / 2.0;
    num += h * (lo * (2.0 * y0 + y1) + hi * (y0 + 2.0 * y1)) / 6.0;
  }
  return den > 0 ? num / den : -1.0;
}

}  // namespace oracle
