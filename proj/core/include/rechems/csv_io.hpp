#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rechems/profile.hpp"

namespace rechems {

/// Reads `timestamp_iso8601,power_kw` rows at strict 15-minute spacing.
/// Load files hold consumption as positive numbers; they are negated here.
/// Throws std::runtime_error naming the line for gaps, duplicates, off-grid
/// spacing, negative values and malformed rows.
[[nodiscard]] PowerProfile parse_profile_csv(std::string_view text, ProfileKind kind,
                                             std::string id, const std::string& source = "profile csv");
[[nodiscard]] PowerProfile read_profile_csv(const std::filesystem::path& path, ProfileKind kind,
                                            std::string id = {});

/// Inverse of parse_profile_csv; loads are written back as positive consumption.
[[nodiscard]] std::string format_profile_csv(const PowerProfile& profile, int offset_minutes = 0);
void write_profile_csv(const std::filesystem::path& path, const PowerProfile& profile,
                       int offset_minutes = 0);

}  // namespace rechems
