#include "rechems/forecasting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "text_util.hpp"

namespace rechems {

ForecastPair Forecaster::forecast(std::size_t node, const NodeHistory& history) const {
  ForecastPair f = predict(node, history);
  bool clamped = false;
  if (!(f.p_gen_hat_kw >= 0.0)) {
    f.p_gen_hat_kw = 0.0;
    clamped = true;
  }
  if (!(f.p_load_hat_kw <= 0.0)) {
    f.p_load_hat_kw = 0.0;
    clamped = true;
  }
  if (clamped) clamped_.fetch_add(1, std::memory_order_relaxed);
  return f;
}

ForecastPair PersistenceForecaster::predict(std::size_t, const NodeHistory& history) const {
  if (history.size() == 0 || history.load_kw.size() != history.size()) {
    throw std::invalid_argument("persistence forecast needs at least one sample");
  }
  return {history.gen_kw.back(), history.load_kw.back()};
}

SeasonalNaiveForecaster::SeasonalNaiveForecaster(std::size_t period) : period_(period) {
  if (period_ == 0) throw std::invalid_argument("seasonal naive period must be > 0");
}

ForecastPair SeasonalNaiveForecaster::predict(std::size_t, const NodeHistory& history) const {
  if (history.size() < period_ || history.load_kw.size() != history.size()) {
    throw std::invalid_argument("seasonal naive forecast needs " + std::to_string(period_) +
                                " samples of history, got " + std::to_string(history.size()));
  }
  // Slot k + 1 - period sits at offset size - period.
  const std::size_t i = history.size() - period_;
  return {history.gen_kw[i], history.load_kw[i]};
}

std::vector<ForecastRecord> parse_forecast_csv(const std::string& text) {
  const auto lines = detail::split_lines(text);
  if (lines.empty() || lines.front() != "node_id,slot_index,p_gen_hat_kw,p_load_hat_kw") {
    throw std::runtime_error(
        "forecast csv: header must be node_id,slot_index,p_gen_hat_kw,p_load_hat_kw");
  }
  std::vector<ForecastRecord> out;
  std::map<std::string, std::size_t> last_slot;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::string where = "forecast csv line " + std::to_string(i + 1);
    const auto f = detail::split_fields(lines[i]);
    if (f.size() != 4) throw std::runtime_error(where + ": expected 4 fields");
    ForecastRecord r;
    r.node_id = std::string(f[0]);
    if (r.node_id.empty()) throw std::runtime_error(where + ": empty node_id");
    if (!detail::parse_size(f[1], r.slot_index)) {
      throw std::runtime_error(where + ": slot_index must be a non-negative integer");
    }
    if (!detail::parse_double(f[2], r.value.p_gen_hat_kw) ||
        !detail::parse_double(f[3], r.value.p_load_hat_kw) ||
        !std::isfinite(r.value.p_gen_hat_kw) || !std::isfinite(r.value.p_load_hat_kw)) {
      throw std::runtime_error(where + ": malformed power value");
    }
    if (r.value.p_load_hat_kw > 0.0) {
      throw std::runtime_error(where + ": load forecast must be <= 0");
    }
    const auto it = last_slot.find(r.node_id);
    if (it != last_slot.end() && r.slot_index <= it->second) {
      throw std::runtime_error(where + ": slot_index not increasing for node '" + r.node_id + "'");
    }
    last_slot[r.node_id] = r.slot_index;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ForecastRecord> read_forecast_csv(const std::filesystem::path& path) {
  return parse_forecast_csv(detail::read_text_file(path));
}

std::string format_forecast_csv(std::span<const ForecastRecord> records) {
  std::string out = "node_id,slot_index,p_gen_hat_kw,p_load_hat_kw\n";
  for (const ForecastRecord& r : records) {
    out += r.node_id;
    out += ',';
    out += std::to_string(r.slot_index);
    out += ',';
    out += detail::format_double(r.value.p_gen_hat_kw);
    out += ',';
    out += detail::format_double(r.value.p_load_hat_kw);
    out += '\n';
  }
  return out;
}

void write_forecast_csv(const std::filesystem::path& path, std::span<const ForecastRecord> records) {
  detail::write_text_file(path, format_forecast_csv(records));
}

FileForecaster::FileForecaster(std::vector<ForecastRecord> records, std::vector<std::string> node_ids)
    : node_ids_(std::move(node_ids)), by_node_(node_ids_.size()) {
  for (ForecastRecord& r : records) {
    const auto it = std::find(node_ids_.begin(), node_ids_.end(), r.node_id);
    if (it == node_ids_.end()) continue;  // forecasts for nodes outside the scenario
    by_node_[static_cast<std::size_t>(it - node_ids_.begin())][r.slot_index] = r.value;
  }
}

FileForecaster::FileForecaster(const std::filesystem::path& path, std::vector<std::string> node_ids)
    : FileForecaster(read_forecast_csv(path), std::move(node_ids)) {}

ForecastPair FileForecaster::predict(std::size_t node, const NodeHistory& history) const {
  const std::size_t slot = history.target_slot();
  if (node >= by_node_.size()) {
    throw std::out_of_range("file forecaster: unknown node index " + std::to_string(node));
  }
  const auto it = by_node_[node].find(slot);
  if (it == by_node_[node].end()) {
    throw std::out_of_range("file forecaster: no forecast for node '" + node_ids_[node] +
                            "' slot " + std::to_string(slot));
  }
  return it->second;
}

double rmse(std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.size() != actual.size()) throw std::invalid_argument("rmse: length mismatch");
  if (predicted.empty()) throw std::invalid_argument("rmse: empty series");
  double sq = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double e = predicted[i] - actual[i];
    sq += e * e;
  }
  return std::sqrt(sq / static_cast<double>(predicted.size()));
}

}  // namespace rechems
