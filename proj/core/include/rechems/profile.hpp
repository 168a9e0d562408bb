#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rechems {

enum class ProfileKind { generation, load };

[[nodiscard]] const char* to_string(ProfileKind kind);

/// Gap-free 15-minute power series for one PV plant or one household load.
///
/// Sign convention: power injected into the node bus is positive, so
/// generation samples are >= 0 and load samples are <= 0. Slot indices are
/// absolute: sample `i` belongs to slot `first_slot + i`.
class PowerProfile {
 public:
  PowerProfile() = default;
  PowerProfile(std::string id, ProfileKind kind, std::vector<double> samples_kw,
               std::int64_t start_epoch_s = 0, std::size_t first_slot = 0);

  [[nodiscard]] const std::string& id() const { return id_; }
  [[nodiscard]] ProfileKind kind() const { return kind_; }
  [[nodiscard]] std::size_t first_slot() const { return first_slot_; }
  [[nodiscard]] std::size_t size() const { return samples_.size(); }
  [[nodiscard]] std::size_t end_slot() const { return first_slot_ + samples_.size(); }
  [[nodiscard]] std::int64_t start_epoch_s() const { return start_epoch_s_; }
  [[nodiscard]] std::span<const double> samples() const { return samples_; }

  /// Power at absolute slot index; throws std::out_of_range outside the horizon.
  [[nodiscard]] double at(std::size_t slot) const;

  [[nodiscard]] double mean() const;
  [[nodiscard]] double max_abs() const;

 private:
  std::string id_;
  ProfileKind kind_ = ProfileKind::generation;
  std::vector<double> samples_;
  std::int64_t start_epoch_s_ = 0;
  std::size_t first_slot_ = 0;
};

}  // namespace rechems
