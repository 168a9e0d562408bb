#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "rechems/community.hpp"
#include "rechems/config.hpp"
#include "rechems/profile.hpp"

namespace rechems {

struct SyntheticOptions {
  std::size_t days = 2;
  std::size_t nodes = 7;
  std::uint64_t seed = 1;
  std::int64_t start_epoch_s = 1559340000;  // 2019-06-01T00:00:00+02:00
  int offset_minutes = 120;
};

/// Desk-scale stand-in for the measured dataset: three PV plants (two 4 kWp,
/// one 3 kWp) with bell-shaped days under random cloud cover, and household
/// loads whose mean and maximum follow the measured homes. Each home gets one
/// of the plants; every plant is used when there are at least three homes.
struct SyntheticCommunity {
  std::vector<PowerProfile> pv;
  std::vector<double> pv_kwp;
  std::vector<double> pv_cost_eur;
  std::vector<PowerProfile> loads;
  std::vector<std::size_t> pv_of_node;
  /// Batteries at defaults, initial SoE 0.5, u_pv computed from the data.
  RecConfig config;

  [[nodiscard]] CommunityData data() const;
};

/// Throws std::invalid_argument for zero days or nodes.
[[nodiscard]] SyntheticCommunity generate_synthetic(const SyntheticOptions& opt);

/// Writes pv/pvN.csv, loads/homeN.csv and a scenario.json referring to them.
/// The scenario simulates the second day (first if only one) and trains on
/// slots 24-71 of the first.
void write_synthetic(const SyntheticCommunity& community, const SyntheticOptions& opt,
                     const std::filesystem::path& dir);

}  // namespace rechems
