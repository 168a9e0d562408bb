#include "rechems/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace rechems {

namespace {

constexpr std::array<const char*, kTermCount> kTermNames = {"VeryLow", "Low", "Medium", "High",
                                                            "VeryHigh"};
constexpr double kBoundSlack = 1e-12;
constexpr double kMinTriangleWidth = 1e-6;

// Gene bounds of one term set, (g', g'') per term in term order.
std::array<double, 10> shape_lower() { return {0.04, 0.01, 0.01, 0.01, 0.01, 0.01, 0.01, 0.01, 0.04, 0.01}; }

std::array<double, 10> shape_upper(double triangle_base) {
  const double g1_inner = 1.0 / triangle_base;
  return {4.00, 0.99, g1_inner, 1.99, g1_inner, 1.99, g1_inner, 1.99, 4.00, 0.99};
}

double unit_clamp(double x) { return std::clamp(x, 0.0, 1.0); }

MembershipFunction inner_triangle(double g1, double g2, double center, double base) {
  const double phi0 = center - base / 2.0;
  const double xi0 = center + base / 2.0;
  const double width = base;  // length of the region each inner gene pair rescales
  double phi = 0.0;
  double xi = 0.0;
  if (g1 >= 1.0) {
    phi = phi0 - (g1 / 2.0 * width - base / 2.0);
    xi = xi0 + (g2 / 2.0 * width - base / 2.0);
  } else {
    phi = phi0 + (-g1 / 2.0 * width + base / 2.0);
    xi = xi0 - (-g2 / 2.0 * width + base / 2.0);
  }
  const double omega = phi + g2 * (xi - phi) / 2.0;

  std::array<double, 3> x = {unit_clamp(phi), unit_clamp(omega), unit_clamp(xi)};
  std::sort(x.begin(), x.end());
  if (x[2] - x[0] < kMinTriangleWidth) {
    x[0] = unit_clamp(x[0] - kMinTriangleWidth / 2.0);
    x[2] = unit_clamp(x[2] + kMinTriangleWidth / 2.0);
  }
  return MembershipFunction::triangle(x[0], x[1], x[2]);
}

}  // namespace

const char* to_string(Term t) { return kTermNames[static_cast<std::size_t>(t)]; }

Term term_from_index(std::size_t i) {
  if (i >= kTermCount) throw std::out_of_range("term index " + std::to_string(i));
  return static_cast<Term>(i);
}

double MembershipFunction::operator()(double x) const {
  if (x < a || x > d) return 0.0;
  if (x >= b && x <= c) return 1.0;
  if (x < b) return (x - a) / (b - a);
  return (d - x) / (d - c);
}

MembershipFunction MembershipFunction::left_shoulder(double core_end, double foot) {
  return {0.0, 0.0, core_end, foot};
}

MembershipFunction MembershipFunction::right_shoulder(double foot, double core_start) {
  return {foot, core_start, 1.0, 1.0};
}

MembershipFunction MembershipFunction::triangle(double left, double apex, double right) {
  return {left, apex, apex, right};
}

void TermSet::validate() const {
  for (std::size_t i = 0; i < kTermCount; ++i) {
    const MembershipFunction& mf = terms[i];
    const std::array<double, 4> x = {mf.a, mf.b, mf.c, mf.d};
    for (double v : x) {
      if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw std::invalid_argument(std::string("term set: abscissa of ") + kTermNames[i] +
                                    " outside [0, 1]");
      }
    }
    if (!std::is_sorted(x.begin(), x.end())) {
      throw std::invalid_argument(std::string("term set: abscissas of ") + kTermNames[i] +
                                  " are not ordered");
    }
  }
  if (terms.front().a != 0.0 || terms.front().b != 0.0) {
    throw std::invalid_argument("term set: VeryLow must be a left shoulder");
  }
  if (terms.back().c != 1.0 || terms.back().d != 1.0) {
    throw std::invalid_argument("term set: VeryHigh must be a right shoulder");
  }
}

FisModel::FisModel(TermSet input, TermSet output, std::array<Rule, kTermCount> rules,
                   std::size_t resolution)
    : input_(input), output_(output), rules_(rules) {
  input_.validate();
  output_.validate();
  for (std::size_t i = 0; i < kTermCount; ++i) {
    if (rules_[i].antecedent != term_from_index(i)) {
      throw std::invalid_argument("fis: rule " + std::to_string(i) + " must have antecedent " +
                                  kTermNames[i]);
    }
    if (static_cast<std::size_t>(rules_[i].consequent) >= kTermCount) {
      throw std::invalid_argument("fis: rule " + std::to_string(i) + " has an invalid consequent");
    }
    if (!(rules_[i].weight >= 0.0 && rules_[i].weight <= 1.0)) {
      throw std::invalid_argument("fis: rule " + std::to_string(i) + " weight outside [0, 1]");
    }
  }
  if (resolution < 2) throw std::invalid_argument("fis: resolution must be >= 2");

  resolution_ = resolution;
  // Uniform grid plus every output vertex, so each term is linear between
  // neighbouring points.
  const double step = 1.0 / static_cast<double>(resolution - 1);
  for (std::size_t j = 0; j + 1 < resolution; ++j) grid_.push_back(static_cast<double>(j) * step);
  grid_.push_back(1.0);
  for (const MembershipFunction& m : output_.terms) {
    for (double v : {m.a, m.b, m.c, m.d}) grid_.push_back(v);
  }
  std::sort(grid_.begin(), grid_.end());
  grid_.erase(std::unique(grid_.begin(), grid_.end()), grid_.end());

  for (std::size_t t = 0; t < kTermCount; ++t) {
    const MembershipFunction& m = output_.terms[t];
    edge_lo_[t].resize(grid_.size() - 1);
    edge_hi_[t].resize(grid_.size() - 1);
    for (std::size_t j = 0; j + 1 < grid_.size(); ++j) {
      const double x0 = grid_[j], x1 = grid_[j + 1], mid = 0.5 * (x0 + x1);
      double y0 = 0.0, y1 = 0.0;
      if (mid > m.a && mid < m.d) {
        if (mid >= m.b && mid <= m.c) {
          y0 = y1 = 1.0;
        } else if (mid < m.b) {
          y0 = (x0 - m.a) / (m.b - m.a);
          y1 = (x1 - m.a) / (m.b - m.a);
        } else {
          y0 = (m.d - x0) / (m.d - m.c);
          y1 = (m.d - x1) / (m.d - m.c);
        }
      }
      edge_lo_[t][j] = y0;
      edge_hi_[t][j] = y1;
    }
    // Segments where the term is nonzero somewhere.
    auto& [lo, hi] = support_[t];
    lo = grid_.size();
    hi = 0;
    for (std::size_t j = 0; j + 1 < grid_.size(); ++j) {
      if (edge_lo_[t][j] > 0.0 || edge_hi_[t][j] > 0.0) {
        lo = std::min(lo, j);
        hi = j + 1;
      }
    }
  }
}

namespace {

struct Moments {
  double area = 0.0;
  double first = 0.0;

  void add_line(double x0, double x1, double y0, double y1) {
    const double h = x1 - x0;
    area += h * (y0 + y1) / 2.0;
    first += h * (x0 * (2.0 * y0 + y1) + x1 * (y0 + 2.0 * y1)) / 6.0;
  }
};

using Lines = std::array<double, kTermCount>;

std::size_t top(const Lines& here, const Lines& there) {
  std::size_t best = 0;
  for (std::size_t t = 1; t < kTermCount; ++t) {
    if (here[t] > here[best] || (here[t] == here[best] && there[t] > there[best])) best = t;
  }
  return best;
}

// Upper envelope of straight lines on [x0, x1]. It is convex, so it is a single
// line unless the leaders at the two ends differ; then split where they cross.
void envelope(double x0, double x1, const Lines& y0, const Lines& y1, int depth, Moments& out) {
  const std::size_t l = top(y0, y1);
  const std::size_t r = top(y1, y0);
  if (l == r || depth == 0) {
    out.add_line(x0, x1, y0[l], y1[r]);
    return;
  }
  const double dl = y0[l] - y0[r];
  const double dr = y1[r] - y1[l];
  const double s = dl + dr > 0.0 ? dl / (dl + dr) : 0.5;
  const double xm = x0 + s * (x1 - x0);
  Lines ym;
  for (std::size_t t = 0; t < kTermCount; ++t) ym[t] = y0[t] + s * (y1[t] - y0[t]);
  envelope(x0, xm, y0, ym, depth - 1, out);
  envelope(xm, x1, ym, y1, depth - 1, out);
}

}  // namespace

Inference FisModel::evaluate(double soe) const {
  // Rules sharing a consequent collapse to their strongest activation:
  // max_r min(s_r, mu(y)) == min(max_r s_r, mu(y)).
  std::array<double, kTermCount> clip{};
  bool any = false;
  for (const Rule& r : rules_) {
    const double s = input_[r.antecedent](soe) * r.weight;
    double& c = clip[static_cast<std::size_t>(r.consequent)];
    if (s > c) {
      c = s;
      any = true;
    }
  }
  if (!any) return {kNeutralOutput, true};

  // Exact integral of the clipped, max-aggregated piecewise-linear shape.
  Moments mom;
  std::size_t first = grid_.size(), last = 0;
  for (std::size_t t = 0; t < kTermCount; ++t) {
    if (clip[t] <= 0.0) continue;
    first = std::min(first, support_[t].first);
    last = std::max(last, support_[t].second);
  }
  for (std::size_t j = first; j < last; ++j) {
    Lines y0{}, y1{};
    std::array<double, kTermCount + 2> cuts{};
    std::size_t n_cuts = 0;
    cuts[n_cuts++] = 0.0;
    bool live = false;
    for (std::size_t t = 0; t < kTermCount; ++t) {
      if (clip[t] <= 0.0) continue;
      y0[t] = edge_lo_[t][j];
      y1[t] = edge_hi_[t][j];
      live = live || y0[t] > 0.0 || y1[t] > 0.0;
      if ((y0[t] - clip[t]) * (y1[t] - clip[t]) < 0.0) cuts[n_cuts++] = (clip[t] - y0[t]) / (y1[t] - y0[t]);
    }
    if (!live) continue;
    const double x0 = grid_[j], x1 = grid_[j + 1];
    if (n_cuts == 1) {
      for (std::size_t t = 0; t < kTermCount; ++t) {
        y0[t] = std::min(clip[t], y0[t]);
        y1[t] = std::min(clip[t], y1[t]);
      }
      envelope(x0, x1, y0, y1, 8, mom);
      continue;
    }
    cuts[n_cuts++] = 1.0;
    std::sort(cuts.begin(), cuts.begin() + static_cast<std::ptrdiff_t>(n_cuts));
    for (std::size_t k = 0; k + 1 < n_cuts; ++k) {
      const double sa = cuts[k], sb = cuts[k + 1];
      if (!(sb > sa)) continue;
      Lines a{}, b{};
      for (std::size_t t = 0; t < kTermCount; ++t) {
        if (clip[t] <= 0.0) continue;
        a[t] = std::min(clip[t], y0[t] + sa * (y1[t] - y0[t]));
        b[t] = std::min(clip[t], y0[t] + sb * (y1[t] - y0[t]));
      }
      envelope(x0 + sa * (x1 - x0), x0 + sb * (x1 - x0), a, b, 8, mom);
    }
  }
  const double num = mom.first;
  const double den = mom.area;
  if (!(den > 0.0)) return {kNeutralOutput, true};
  return {std::clamp(num / den, 0.0, 1.0), false};
}

FisModel FisModel::with_resolution(std::size_t resolution) const {
  return FisModel(input_, output_, rules_, resolution);
}

std::string FisModel::describe() const {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "Rules:\n";
  for (const Rule& r : rules_) {
    os << "  If SoE is " << to_string(r.antecedent) << " then alpha is " << to_string(r.consequent)
       << " (" << r.weight << ")\n";
  }
  os << std::setprecision(4);
  auto table = [&os](const char* title, const TermSet& ts) {
    os << title << " term set (a, b, c, d):\n";
    for (std::size_t i = 0; i < kTermCount; ++i) {
      const MembershipFunction& mf = ts.terms[i];
      os << "  " << std::left << std::setw(9) << kTermNames[i] << std::right << ' ' << mf.a << ' '
         << mf.b << ' ' << mf.c << ' ' << mf.d << '\n';
    }
  };
  table("Input (SoE)", input_);
  table("Output (alpha)", output_);
  return os.str();
}

std::array<double, FisGenome::kSize> FisGenome::lower_bounds(const DecodeOptions&) {
  std::array<double, kSize> lo{};
  const auto shape = shape_lower();
  std::copy(shape.begin(), shape.end(), lo.begin() + kInputShape);
  std::copy(shape.begin(), shape.end(), lo.begin() + kOutputShape);
  for (std::size_t i = 0; i < kTermCount; ++i) {
    lo[kWeights + i] = 0.0;
    lo[kConsequents + i] = 0.5;
  }
  return lo;
}

std::array<double, FisGenome::kSize> FisGenome::upper_bounds(const DecodeOptions& opt) {
  std::array<double, kSize> hi{};
  const auto shape = shape_upper(opt.triangle_base);
  std::copy(shape.begin(), shape.end(), hi.begin() + kInputShape);
  std::copy(shape.begin(), shape.end(), hi.begin() + kOutputShape);
  for (std::size_t i = 0; i < kTermCount; ++i) {
    hi[kWeights + i] = 1.0;
    hi[kConsequents + i] = 5.5;
  }
  return hi;
}

TermSet decode_term_set(const double* g, const DecodeOptions& opt) {
  TermSet ts;
  // VeryLow shoulder: foot gamma, core ends at beta.
  const double gamma = g[0] * opt.gamma0;
  const double beta = g[1] * gamma;
  ts.terms[0] = MembershipFunction::left_shoulder(unit_clamp(beta), unit_clamp(gamma));
  for (std::size_t k = 0; k < 3; ++k) {
    ts.terms[1 + k] =
        inner_triangle(g[2 + 2 * k], g[3 + 2 * k], opt.inner_centers[k], opt.triangle_base);
  }
  // VeryHigh shoulder: foot theta, core starts at lambda.
  const double theta = g[8] * (1.0 - opt.theta0);
  const double lambda = theta + g[9] * (1.0 - theta);
  ts.terms[4] = MembershipFunction::right_shoulder(unit_clamp(theta), unit_clamp(lambda));
  return ts;
}

FisModel decode(const FisGenome& genome, const DecodeOptions& opt) {
  const auto lo = FisGenome::lower_bounds(opt);
  const auto hi = FisGenome::upper_bounds(opt);
  for (std::size_t i = 0; i < FisGenome::kSize; ++i) {
    const double v = genome.genes[i];
    if (!std::isfinite(v) || v < lo[i] - kBoundSlack || v > hi[i] + kBoundSlack) {
      throw std::invalid_argument("decode: gene " + std::to_string(i) + " = " + std::to_string(v) +
                                  " outside [" + std::to_string(lo[i]) + ", " +
                                  std::to_string(hi[i]) + "]");
    }
  }
  const TermSet input = decode_term_set(genome.genes.data() + FisGenome::kInputShape, opt);
  const TermSet output = decode_term_set(genome.genes.data() + FisGenome::kOutputShape, opt);
  std::array<Rule, kTermCount> rules;
  for (std::size_t i = 0; i < kTermCount; ++i) {
    const double w = std::clamp(genome.genes[FisGenome::kWeights + i], 0.0, 1.0);
    const long idx = std::clamp(std::lround(genome.genes[FisGenome::kConsequents + i]), 1L, 5L);
    rules[i] = Rule{term_from_index(i), term_from_index(static_cast<std::size_t>(idx - 1)), w};
  }
  return FisModel(input, output, rules, opt.resolution);
}

TermSet default_term_set(const DecodeOptions& opt) {
  TermSet ts;
  const double half = opt.triangle_base / 2.0;
  ts.terms[0] = MembershipFunction::left_shoulder(opt.gamma0 / 2.0, opt.gamma0);
  for (std::size_t k = 0; k < 3; ++k) {
    const double c = opt.inner_centers[k];
    ts.terms[1 + k] = MembershipFunction::triangle(c - half, c, c + half);
  }
  ts.terms[4] =
      MembershipFunction::right_shoulder(opt.theta0, opt.theta0 + (1.0 - opt.theta0) / 2.0);
  return ts;
}

}  // namespace rechems
