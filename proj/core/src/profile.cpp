#include "rechems/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rechems {

const char* to_string(ProfileKind kind) {
  return kind == ProfileKind::generation ? "generation" : "load";
}

PowerProfile::PowerProfile(std::string id, ProfileKind kind, std::vector<double> samples_kw,
                           std::int64_t start_epoch_s, std::size_t first_slot)
    : id_(std::move(id)),
      kind_(kind),
      samples_(std::move(samples_kw)),
      start_epoch_s_(start_epoch_s),
      first_slot_(first_slot) {
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const double p = samples_[i];
    if (!std::isfinite(p)) {
      throw std::invalid_argument("profile '" + id_ + "': non-finite sample at index " +
                                  std::to_string(i));
    }
    if (kind_ == ProfileKind::generation && p < 0.0) {
      throw std::invalid_argument("profile '" + id_ + "': negative generation at index " +
                                  std::to_string(i));
    }
    if (kind_ == ProfileKind::load && p > 0.0) {
      throw std::invalid_argument("profile '" + id_ + "': positive load at index " +
                                  std::to_string(i) + " (loads are stored <= 0)");
    }
  }
}

double PowerProfile::at(std::size_t slot) const {
  if (slot < first_slot_ || slot >= end_slot()) {
    throw std::out_of_range("profile '" + id_ + "' has no sample for slot " +
                            std::to_string(slot));
  }
  return samples_[slot - first_slot_];
}

double PowerProfile::mean() const {
  if (samples_.empty()) return 0.0;
  return std::accumulate(samples_.begin(), samples_.end(), 0.0) /
         static_cast<double>(samples_.size());
}

double PowerProfile::max_abs() const {
  double m = 0.0;
  for (double p : samples_) m = std::max(m, std::abs(p));
  return m;
}

}  // namespace rechems
