#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rechems/forecasting.hpp"
#include "rechems/profile.hpp"

namespace rechems {

/// Generation and load series of every node over one common slot range.
class CommunityData {
 public:
  CommunityData() = default;
  /// One generation and one load profile per node, all covering the same
  /// slots. Throws std::invalid_argument otherwise.
  CommunityData(std::vector<PowerProfile> generation, std::vector<PowerProfile> load);

  [[nodiscard]] std::size_t node_count() const { return generation_.size(); }
  [[nodiscard]] std::size_t first_slot() const { return first_slot_; }
  [[nodiscard]] std::size_t end_slot() const { return first_slot_ + length_; }
  [[nodiscard]] std::size_t length() const { return length_; }
  [[nodiscard]] bool covers(std::size_t start, std::size_t slots) const {
    return start >= first_slot_ && start + slots <= end_slot();
  }

  [[nodiscard]] double gen(std::size_t node, std::size_t slot) const {
    return generation_[node].samples()[slot - first_slot_];
  }
  [[nodiscard]] double load(std::size_t node, std::size_t slot) const {
    return load_[node].samples()[slot - first_slot_];
  }
  [[nodiscard]] double community_gen(std::size_t slot) const;

  [[nodiscard]] const PowerProfile& generation(std::size_t node) const { return generation_[node]; }
  [[nodiscard]] const PowerProfile& load_profile(std::size_t node) const { return load_[node]; }

  /// Measurements of `node` from the first slot up to and including `slot`.
  [[nodiscard]] NodeHistory history(std::size_t node, std::size_t slot) const;

 private:
  std::vector<PowerProfile> generation_;
  std::vector<PowerProfile> load_;
  std::size_t first_slot_ = 0;
  std::size_t length_ = 0;
};

}  // namespace rechems
