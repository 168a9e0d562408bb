#include "rechems/community.hpp"

#include <stdexcept>

namespace rechems {

CommunityData::CommunityData(std::vector<PowerProfile> generation, std::vector<PowerProfile> load)
    : generation_(std::move(generation)), load_(std::move(load)) {
  if (generation_.empty() || generation_.size() != load_.size()) {
    throw std::invalid_argument("community data needs one generation and one load profile per node");
  }
  first_slot_ = generation_.front().first_slot();
  length_ = generation_.front().size();
  for (std::size_t x = 0; x < generation_.size(); ++x) {
    const PowerProfile& g = generation_[x];
    const PowerProfile& l = load_[x];
    if (g.kind() != ProfileKind::generation || l.kind() != ProfileKind::load) {
      throw std::invalid_argument("node " + std::to_string(x) + ": profile kinds swapped");
    }
    if (g.first_slot() != first_slot_ || l.first_slot() != first_slot_ || g.size() != length_ ||
        l.size() != length_) {
      throw std::invalid_argument("node " + std::to_string(x) +
                                  ": profiles do not cover the common slot range");
    }
  }
}

double CommunityData::community_gen(std::size_t slot) const {
  double sum = 0.0;
  for (std::size_t x = 0; x < node_count(); ++x) sum += gen(x, slot);
  return sum;
}

NodeHistory CommunityData::history(std::size_t node, std::size_t slot) const {
  if (node >= node_count()) throw std::out_of_range("history: node index out of range");
  if (slot < first_slot_ || slot >= end_slot()) {
    throw std::out_of_range("history: slot " + std::to_string(slot) + " outside the data");
  }
  const std::size_t n = slot - first_slot_ + 1;
  return {generation_[node].samples().first(n), load_[node].samples().first(n), first_slot_};
}

}  // namespace rechems
