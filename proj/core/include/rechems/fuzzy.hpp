#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rechems {

enum class Term : std::uint8_t { very_low, low, medium, high, very_high };
inline constexpr std::size_t kTermCount = 5;

[[nodiscard]] const char* to_string(Term t);
[[nodiscard]] Term term_from_index(std::size_t i);

/// Trapezoid on [0, 1] with feet a, d and core [b, c]. Triangles have b == c,
/// shoulders have a == b == 0 or c == d == 1.
struct MembershipFunction {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  [[nodiscard]] double operator()(double x) const;

  [[nodiscard]] static MembershipFunction left_shoulder(double core_end, double foot);
  [[nodiscard]] static MembershipFunction right_shoulder(double foot, double core_start);
  [[nodiscard]] static MembershipFunction triangle(double left, double apex, double right);

  friend bool operator==(const MembershipFunction&, const MembershipFunction&) = default;
};

/// Five ordered terms over the unit interval.
struct TermSet {
  std::array<MembershipFunction, kTermCount> terms;

  [[nodiscard]] const MembershipFunction& operator[](Term t) const {
    return terms[static_cast<std::size_t>(t)];
  }
  /// Throws std::invalid_argument if an abscissa leaves [0, 1] or is out of order.
  void validate() const;

  friend bool operator==(const TermSet&, const TermSet&) = default;
};

struct Rule {
  Term antecedent = Term::very_low;
  Term consequent = Term::very_low;
  double weight = 1.0;

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct Inference {
  double alpha = 0.5;
  /// True when no rule fired and the neutral output was returned.
  bool neutral_fallback = false;
};

/// One-input one-output Mamdani system: singleton fuzzification, rule weight
/// scaling, min implication, max aggregation and centroid defuzzification.
/// The centroid integrates the aggregated shape exactly between the points of a
/// uniform grid over [0, 1] refined at every output vertex.
class FisModel {
 public:
  static constexpr std::size_t kDefaultResolution = 1001;
  static constexpr double kNeutralOutput = 0.5;

  /// Rule i must have antecedent term i. Throws std::invalid_argument on
  /// malformed term sets, rules or resolution < 2.
  FisModel(TermSet input, TermSet output, std::array<Rule, kTermCount> rules,
           std::size_t resolution = kDefaultResolution);

  [[nodiscard]] double infer(double soe) const { return evaluate(soe).alpha; }
  [[nodiscard]] Inference evaluate(double soe) const;

  [[nodiscard]] const TermSet& input() const { return input_; }
  [[nodiscard]] const TermSet& output() const { return output_; }
  [[nodiscard]] const std::array<Rule, kTermCount>& rules() const { return rules_; }
  [[nodiscard]] std::size_t resolution() const { return resolution_; }

  [[nodiscard]] FisModel with_resolution(std::size_t resolution) const;

  /// Rule listing followed by the abscissa tables of both term sets.
  [[nodiscard]] std::string describe() const;

 private:
  TermSet input_;
  TermSet output_;
  std::array<Rule, kTermCount> rules_;
  std::size_t resolution_ = kDefaultResolution;
  std::vector<double> grid_;
  // Output membership at the left and right end of each grid segment.
  std::array<std::vector<double>, kTermCount> edge_lo_;
  std::array<std::vector<double>, kTermCount> edge_hi_;
  std::array<std::pair<std::size_t, std::size_t>, kTermCount> support_{};
};

/// Shape parameters of the gene-to-abscissa mapping.
struct DecodeOptions {
  double triangle_base = 0.2;   // base length of the default inner triangles
  double gamma0 = 0.25;         // default VeryLow foot
  double theta0 = 0.75;         // default VeryHigh reference
  std::array<double, 3> inner_centers = {0.25, 0.5, 0.75};
  std::size_t resolution = FisModel::kDefaultResolution;
};

/// 30-gene individual: for each term set, (g', g'') per term in term order
/// (input genes 0-9, output genes 10-19), then 5 rule weights (20-24) and
/// 5 consequent genes (25-29) that round to term indices 1..5.
struct FisGenome {
  static constexpr std::size_t kSize = 30;
  static constexpr std::size_t kInputShape = 0;
  static constexpr std::size_t kOutputShape = 10;
  static constexpr std::size_t kWeights = 20;
  static constexpr std::size_t kConsequents = 25;

  std::array<double, kSize> genes{};

  [[nodiscard]] static std::array<double, kSize> lower_bounds(const DecodeOptions& opt = {});
  [[nodiscard]] static std::array<double, kSize> upper_bounds(const DecodeOptions& opt = {});
};

/// Term set encoded by ten shape genes.
[[nodiscard]] TermSet decode_term_set(const double* shape_genes, const DecodeOptions& opt);

/// Throws std::invalid_argument if any gene is outside its bounds.
[[nodiscard]] FisModel decode(const FisGenome& genome, const DecodeOptions& opt = {});

/// Evenly tiled default term set (shoulders at 0.25 / 0.75, triangles of base
/// `triangle_base` around the inner centers).
[[nodiscard]] TermSet default_term_set(const DecodeOptions& opt = {});

}  // namespace rechems
