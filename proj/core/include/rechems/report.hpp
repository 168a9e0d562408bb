#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rechems/config.hpp"
#include "rechems/hems.hpp"

namespace rechems {

struct RunMetadata {
  std::string scenario;
  std::string policy;
  std::string forecaster = "none";
  /// Objective of the auto-consumption run over the same horizon.
  std::optional<double> auto_objective;
  /// False when the sale price is still the built-in test default.
  bool pr3_configured = false;
  bool include_timing = false;
};

/// One row per node and slot plus one community row per slot.
[[nodiscard]] std::string format_run_csv(const SimulationRun& run, const RecConfig& cfg);
[[nodiscard]] std::string format_summary_json(const SimulationRun& run, const RecConfig& cfg,
                                              const RunMetadata& meta);
/// Writes run.csv and summary.json into `dir`.
void write_run(const std::filesystem::path& dir, const SimulationRun& run, const RecConfig& cfg,
               const RunMetadata& meta);

/// Community rows of a run.csv, summed in slot order.
struct RunTotals {
  std::size_t slots = 0;
  CashFlow cash;
  double objective = 0.0;
  std::vector<std::size_t> slot_index;
  std::vector<CashFlow> slot_cash;
  std::vector<double> slot_objective;
};

/// Throws std::runtime_error naming the line on malformed input.
[[nodiscard]] RunTotals read_run_csv(const std::filesystem::path& path);

/// Per-slot community CSV of a run directory.
[[nodiscard]] std::string report_csv(const std::filesystem::path& run_dir);
/// Totals re-summed from run.csv, checked against summary.json.
[[nodiscard]] std::string report_json(const std::filesystem::path& run_dir);

}  // namespace rechems
