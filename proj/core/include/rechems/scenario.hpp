#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rechems/community.hpp"
#include "rechems/config.hpp"
#include "rechems/forecasting.hpp"
#include "rechems/genetic.hpp"
#include "rechems/hems.hpp"

namespace rechems {

/// One resolved setting and where its value came from
/// ("default", "scenario" or "computed").
struct ConfigEntry {
  std::string path;
  std::string value;
  std::string source;
};

struct NodeSource {
  std::filesystem::path generation_csv;
  std::filesystem::path load_csv;
};

struct ForecasterChoice {
  enum class Kind { none, persistence, seasonal_naive, file };
  Kind kind = Kind::none;
  std::size_t period = kSlotsPerDay;
  std::filesystem::path file;
};

/// "persistence", "seasonal" / "seasonal_naive", or "file:<path>".
[[nodiscard]] ForecasterChoice parse_forecaster_choice(std::string_view text);
[[nodiscard]] std::string to_string(const ForecasterChoice& choice);
/// Throws std::invalid_argument for Kind::none.
[[nodiscard]] std::unique_ptr<Forecaster> make_forecaster(const ForecasterChoice& choice,
                                                          const std::vector<std::string>& node_ids);

struct GaSettings {
  std::size_t population = 100;
  double crossover_fraction = 0.7;
  double mutation_probability = 0.5;
  std::size_t generations = 50;
  std::size_t elite_count = 5;
  std::uint64_t seed = 1;

  [[nodiscard]] ga::GaConfig to_config() const;
};

struct Scenario {
  std::string name = "scenario";
  std::filesystem::path base_dir;
  std::uint64_t seed = 1;
  bool shuffle_pv = false;
  std::vector<NodeSource> sources;
  RecConfig config;
  std::optional<double> u_pv_override;
  bool pr3_configured = false;
  SimulationMode mode = SimulationMode::auto_consumption;
  std::size_t start_slot = kSlotsPerDay;
  std::size_t slots = kSlotsPerDay;
  TrainingWindow training_window;
  std::size_t training_repeats = 10;
  GaSettings ga;
  ForecasterChoice forecaster;
  /// Every resolved setting, in document order.
  std::vector<ConfigEntry> echo;
};

/// Strict parse of a scenario document: unknown keys, wrong types and
/// out-of-range values throw std::invalid_argument naming the field path.
/// Relative CSV paths resolve against `base_dir`. Profiles are not read.
[[nodiscard]] Scenario parse_scenario(std::string_view json_text,
                                      const std::filesystem::path& base_dir = {});

struct LoadedScenario {
  Scenario scenario;
  CommunityData data;
};

/// Parses the document, applies the seeded PV shuffle, reads every profile,
/// crops them to their common time range and computes u_pv from the data
/// unless the document sets it.
[[nodiscard]] LoadedScenario load_scenario(const std::filesystem::path& path);

/// `path = value  (source)` lines.
[[nodiscard]] std::string format_config_echo(const Scenario& scenario);

}  // namespace rechems
