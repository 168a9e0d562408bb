#pragma once

#include <cstddef>

namespace rechems {

/// Length of one simulation timeslot in hours (15 minutes).
inline constexpr double kSlotHours = 0.25;
inline constexpr std::size_t kSlotsPerDay = 96;
inline constexpr std::size_t kSlotsPerHour = 4;
inline constexpr long kSlotSeconds = 900;

/// Comparison tolerances shared by every module.
inline constexpr double kPowerTolerance = 1e-9;   // kW
inline constexpr double kMoneyTolerance = 1e-9;   // EUR
inline constexpr double kSoeTolerance = 1e-9;     // fraction of capacity

struct Timeslot {
  std::size_t index = 0;
  static constexpr double duration_h = kSlotHours;

  [[nodiscard]] constexpr std::size_t day() const { return index / kSlotsPerDay; }
  [[nodiscard]] constexpr std::size_t slot_of_day() const { return index % kSlotsPerDay; }
};

/// Energy exchanged over `hours` at constant `power_kw`; sign preserved.
[[nodiscard]] constexpr double energy_of(double power_kw, double hours) {
  return power_kw * hours;
}

/// Node bus balance: generation (>= 0) plus load (<= 0). Positive is surplus.
[[nodiscard]] constexpr double net_power(double p_gen_kw, double p_load_kw) {
  return p_gen_kw + p_load_kw;
}

}  // namespace rechems
