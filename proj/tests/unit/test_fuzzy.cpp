#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rechems/fuzzy.hpp"

using namespace rechems;

namespace {

std::array<Rule, kTermCount> rules_from(std::array<int, 5> consequents, std::array<double, 5> w) {
  std::array<Rule, kTermCount> r;
  for (std::size_t i = 0; i < kTermCount; ++i) {
    r[i] = Rule{term_from_index(i), term_from_index(static_cast<std::size_t>(consequents[i])), w[i]};
  }
  return r;
}

FisModel inverse_model(std::size_t resolution = FisModel::kDefaultResolution) {
  return FisModel(default_term_set(), default_term_set(), rules_from({4, 3, 2, 1, 0}, {1, 1, 1, 1, 1}),
                  resolution);
}

FisGenome random_genome(std::mt19937_64& rng) {
  const auto lo = FisGenome::lower_bounds();
  const auto hi = FisGenome::upper_bounds();
  FisGenome g;
  for (std::size_t i = 0; i < FisGenome::kSize; ++i) {
    g.genes[i] = std::uniform_real_distribution<double>(lo[i], hi[i])(rng);
  }
  return g;
}

FisGenome unit_genome() {
  FisGenome g;
  for (std::size_t i = 0; i < 20; ++i) g.genes[i] = 1.0;
  for (std::size_t i : {1, 9, 11, 19}) g.genes[i] = 0.5;  // shoulder core genes
  for (std::size_t i = 0; i < 5; ++i) g.genes[FisGenome::kWeights + i] = 1.0;
  for (std::size_t i = 0; i < 5; ++i) g.genes[FisGenome::kConsequents + i] = 5.0 - i;
  return g;
}

oracle::Mamdani to_oracle(const FisModel& m) {
  oracle::Mamdani o;
  for (std::size_t t = 0; t < kTermCount; ++t) {
    const auto& a = m.input().terms[t];
    const auto& b = m.output().terms[t];
    o.in[t] = {a.a, a.b, a.c, a.d};
    o.out[t] = {b.a, b.b, b.c, b.d};
    o.consequent[t] = static_cast<int>(m.rules()[t].consequent);
    o.weight[t] = m.rules()[t].weight;
  }
  return o;
}

}  // namespace

TEST(Membership, Shapes) {
  const auto tri = MembershipFunction::triangle(0.2, 0.4, 0.6);
  EXPECT_DOUBLE_EQ(tri(0.4), 1.0);
  EXPECT_DOUBLE_EQ(tri(0.3), 0.5);
  EXPECT_DOUBLE_EQ(tri(0.5), 0.5);
  EXPECT_EQ(tri(0.1), 0.0);
  EXPECT_EQ(tri(0.7), 0.0);
  const auto ls = MembershipFunction::left_shoulder(0.1, 0.3);
  EXPECT_EQ(ls(0.0), 1.0);
  EXPECT_DOUBLE_EQ(ls(0.2), 0.5);
  const auto rs = MembershipFunction::right_shoulder(0.7, 0.9);
  EXPECT_EQ(rs(1.0), 1.0);
  EXPECT_DOUBLE_EQ(rs(0.8), 0.5);
}

TEST(Decode, VeryLowShoulder) {
  FisGenome g = unit_genome();
  TermSet ts = decode_term_set(g.genes.data(), DecodeOptions{});
  EXPECT_DOUBLE_EQ(ts.terms[0].d, 0.25);
  g.genes[1] = 0.5;
  ts = decode_term_set(g.genes.data(), DecodeOptions{});
  EXPECT_DOUBLE_EQ(ts.terms[0].c, 0.125);
  EXPECT_EQ(ts.terms[0].a, 0.0);
  EXPECT_EQ(ts.terms[0].b, 0.0);
}

TEST(Decode, VeryHighShoulder) {
  FisGenome g = unit_genome();
  g.genes[8] = 1.0;
  g.genes[9] = 0.5;
  const TermSet ts = decode_term_set(g.genes.data(), DecodeOptions{});
  EXPECT_DOUBLE_EQ(ts.terms[4].a, 0.25);
  EXPECT_DOUBLE_EQ(ts.terms[4].b, 0.625);
  EXPECT_EQ(ts.terms[4].c, 1.0);
  EXPECT_EQ(ts.terms[4].d, 1.0);
}

TEST(Decode, UnitInnerGenesGiveDefaultTriangles) {
  const TermSet ts = decode_term_set(unit_genome().genes.data(), DecodeOptions{});
  const TermSet def = default_term_set();
  for (std::size_t t = 1; t < 4; ++t) {
    EXPECT_NEAR(ts.terms[t].a, def.terms[t].a, 1e-12);
    EXPECT_NEAR(ts.terms[t].b, def.terms[t].b, 1e-12);
    EXPECT_NEAR(ts.terms[t].d, def.terms[t].d, 1e-12);
  }
}

TEST(Decode, ConsequentsRoundToTerms) {
  FisGenome g = unit_genome();
  g.genes[FisGenome::kConsequents + 0] = 0.5;
  g.genes[FisGenome::kConsequents + 1] = 1.49;
  g.genes[FisGenome::kConsequents + 2] = 2.5;
  g.genes[FisGenome::kConsequents + 3] = 5.5;
  const FisModel m = decode(g);
  EXPECT_EQ(m.rules()[0].consequent, Term::very_low);
  EXPECT_EQ(m.rules()[1].consequent, Term::very_low);
  EXPECT_EQ(m.rules()[2].consequent, Term::medium);
  EXPECT_EQ(m.rules()[3].consequent, Term::very_high);
}

TEST(Decode, OutOfBoundsGeneThrows) {
  FisGenome g = unit_genome();
  g.genes[0] = 5.0;
  EXPECT_THROW((void)decode(g), std::invalid_argument);
  g = unit_genome();
  g.genes[FisGenome::kWeights] = NAN;
  EXPECT_THROW((void)decode(g), std::invalid_argument);
}

TEST(Decode, Deterministic) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const FisGenome g = random_genome(rng);
    const FisModel a = decode(g);
    const FisModel b = decode(g);
    EXPECT_EQ(a.input(), b.input());
    EXPECT_EQ(a.output(), b.output());
    EXPECT_EQ(a.rules(), b.rules());
    for (int k = 0; k <= 100; ++k) EXPECT_EQ(a.infer(k / 100.0), b.infer(k / 100.0));
  }
}

TEST(Infer, SymmetricModelMidpoint) {
  EXPECT_NEAR(inverse_model().infer(0.5), 0.5, 1e-3);
}

TEST(Infer, SingleRuleCentroidOfVeryHigh) {
  const FisModel m(default_term_set(), default_term_set(), rules_from({4, 3, 2, 1, 0}, {1, 0, 0, 0, 0}));
  // Continuous centroid of the VeryHigh shoulder by fine numerical integration.
  const MembershipFunction vh = default_term_set().terms[4];
  const int n = 1000000;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    const double y = (i + 0.5) / n;
    num += y * oracle::membership({vh.a, vh.b, vh.c, vh.d}, y);
    den += oracle::membership({vh.a, vh.b, vh.c, vh.d}, y);
  }
  EXPECT_NEAR(m.infer(0.0), num / den, 1e-3);
  EXPECT_NEAR(m.infer(0.05), num / den, 1e-3);
}

TEST(Infer, InverseRulePatternMonotone) {
  const FisModel m = inverse_model();
  double prev = m.infer(0.0);
  for (int k = 1; k <= 100; ++k) {
    const double a = m.infer(k / 100.0);
    EXPECT_LE(a, prev + 1e-12) << "soe " << k / 100.0;
    prev = a;
  }
}

TEST(Infer, NoActivationFallsBack) {
  const FisModel m(default_term_set(), default_term_set(), rules_from({4, 3, 2, 1, 0}, {0, 0, 0, 0, 0}));
  const Inference r = m.evaluate(0.3);
  EXPECT_TRUE(r.neutral_fallback);
  EXPECT_EQ(r.alpha, 0.5);
}

TEST(Infer, WeightZeroRuleIsInert) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    FisGenome g = random_genome(rng);
    g.genes[FisGenome::kWeights + 2] = 0.0;
    const FisModel a = decode(g);
    g.genes[FisGenome::kConsequents + 2] = g.genes[FisGenome::kConsequents + 2] < 3 ? 5.0 : 1.0;
    const FisModel b = decode(g);
    for (int k = 0; k <= 100; ++k) EXPECT_EQ(a.infer(k / 100.0), b.infer(k / 100.0));
  }
}

TEST(Infer, MatchesBruteForceMamdani) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    const FisModel m = decode(random_genome(rng));
    const oracle::Mamdani o = to_oracle(m);
    for (int k = 0; k <= 100; ++k) {
      const double x = k / 100.0;
      const Inference r = m.evaluate(x);
      const double want = oracle::mamdani_centroid(o, x);
      if (want < 0) {
        EXPECT_TRUE(r.neutral_fallback);
      } else {
        EXPECT_NEAR(r.alpha, want, 1e-12);
      }
    }
  }
}

TEST(Infer, RandomGenomesStayInUnitInterval) {
  std::mt19937_64 rng(2024);
  std::size_t bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const FisModel m = decode(random_genome(rng));
    for (int k = 0; k <= 100; ++k) {
      const double a = m.infer(k / 100.0);
      if (!(a >= 0.0 && a <= 1.0)) ++bad;
    }
  }
  EXPECT_EQ(bad, 0u);
}

TEST(Infer, ResolutionDoublingDrift) {
  for (const FisModel& m : {inverse_model(), decode(unit_genome())}) {
    const FisModel fine = m.with_resolution(2001);
    for (int k = 0; k <= 100; ++k) {
      EXPECT_LT(std::fabs(m.infer(k / 100.0) - fine.infer(k / 100.0)), 1e-3);
    }
  }
}

TEST(FisModelCtor, RejectsMalformed) {
  TermSet bad = default_term_set();
  bad.terms[2].a = 0.7;
  EXPECT_THROW(FisModel(bad, default_term_set(), rules_from({4, 3, 2, 1, 0}, {1, 1, 1, 1, 1})),
               std::invalid_argument);
  auto rules = rules_from({4, 3, 2, 1, 0}, {1, 1, 1, 1, 1});
  std::swap(rules[0], rules[1]);
  EXPECT_THROW(FisModel(default_term_set(), default_term_set(), rules), std::invalid_argument);
  EXPECT_THROW(FisModel(default_term_set(), default_term_set(), rules_from({4, 3, 2, 1, 0}, {1, 1, 2, 1, 1})),
               std::invalid_argument);
  EXPECT_THROW(inverse_model(1), std::invalid_argument);
}

TEST(FisModelCtor, DescribeListsRules) {
  const std::string text = inverse_model().describe();
  EXPECT_NE(text.find("If SoE is VeryLow then alpha is VeryHigh"), std::string::npos);
  EXPECT_NE(text.find("Output (alpha)"), std::string::npos);
}
