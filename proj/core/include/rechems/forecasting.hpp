#pragma once

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rechems {

/// Next-slot prediction for one node: generation >= 0, load <= 0 (kW).
struct ForecastPair {
  double p_gen_hat_kw = 0.0;
  double p_load_hat_kw = 0.0;

  friend bool operator==(const ForecastPair&, const ForecastPair&) = default;
};

/// Measured history of one node. The last sample belongs to the current slot
/// k = first_slot + size - 1; forecasters predict slot k + 1 and never see
/// anything later.
struct NodeHistory {
  std::span<const double> gen_kw;
  std::span<const double> load_kw;
  std::size_t first_slot = 0;

  [[nodiscard]] std::size_t size() const { return gen_kw.size(); }
  [[nodiscard]] std::size_t target_slot() const { return first_slot + gen_kw.size(); }
};

class Forecaster {
 public:
  virtual ~Forecaster() = default;

  /// Forecast for history.target_slot(), clamped to the sign convention.
  [[nodiscard]] ForecastPair forecast(std::size_t node, const NodeHistory& history) const;

  /// Number of forecasts that needed sign clamping so far.
  [[nodiscard]] std::size_t clamped_count() const { return clamped_.load(); }

 protected:
  [[nodiscard]] virtual ForecastPair predict(std::size_t node, const NodeHistory& history) const = 0;

 private:
  mutable std::atomic<std::size_t> clamped_{0};
};

/// Value at slot k repeated for k + 1. Throws std::invalid_argument on empty history.
class PersistenceForecaster final : public Forecaster {
 protected:
  [[nodiscard]] ForecastPair predict(std::size_t node, const NodeHistory& history) const override;
};

/// Value one period before k + 1. Throws std::invalid_argument if the history
/// is shorter than the period.
class SeasonalNaiveForecaster final : public Forecaster {
 public:
  explicit SeasonalNaiveForecaster(std::size_t period = 96);

 protected:
  [[nodiscard]] ForecastPair predict(std::size_t node, const NodeHistory& history) const override;

 private:
  std::size_t period_;
};

/// Row of the forecast CSV: node_id,slot_index,p_gen_hat_kw,p_load_hat_kw
struct ForecastRecord {
  std::string node_id;
  std::size_t slot_index = 0;
  ForecastPair value;

  friend bool operator==(const ForecastRecord&, const ForecastRecord&) = default;
};

/// Throws std::runtime_error naming the line on schema violations, positive
/// loads, or slot indices that do not increase within a node.
[[nodiscard]] std::vector<ForecastRecord> read_forecast_csv(const std::filesystem::path& path);
[[nodiscard]] std::vector<ForecastRecord> parse_forecast_csv(const std::string& text);
void write_forecast_csv(const std::filesystem::path& path, std::span<const ForecastRecord> records);
[[nodiscard]] std::string format_forecast_csv(std::span<const ForecastRecord> records);

/// Serves precomputed forecasts keyed by (node, slot).
class FileForecaster final : public Forecaster {
 public:
  /// `node_ids[i]` is the identifier of node index i in the file.
  FileForecaster(std::vector<ForecastRecord> records, std::vector<std::string> node_ids);
  FileForecaster(const std::filesystem::path& path, std::vector<std::string> node_ids);

 protected:
  /// Throws std::out_of_range naming node and slot when the file lacks the slot.
  [[nodiscard]] ForecastPair predict(std::size_t node, const NodeHistory& history) const override;

 private:
  std::vector<std::string> node_ids_;
  std::vector<std::map<std::size_t, ForecastPair>> by_node_;
};

/// Root of the mean squared error. Throws std::invalid_argument on size
/// mismatch or empty input.
[[nodiscard]] double rmse(std::span<const double> predicted, std::span<const double> actual);

}  // namespace rechems
