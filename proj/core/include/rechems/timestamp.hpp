#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace rechems {

/// Instant with the UTC offset it was written in.
struct Timestamp {
  std::int64_t epoch_s = 0;
  int offset_minutes = 0;

  friend bool operator==(const Timestamp&, const Timestamp&) = default;
};

/// Parses YYYY-MM-DDTHH:MM[:SS](Z|+HH:MM|-HH:MM). An explicit offset is
/// required. Throws std::invalid_argument on anything else.
[[nodiscard]] Timestamp parse_iso8601(std::string_view text);

/// YYYY-MM-DDTHH:MM:SS followed by Z or the offset.
[[nodiscard]] std::string format_iso8601(std::int64_t epoch_s, int offset_minutes = 0);
[[nodiscard]] inline std::string format_iso8601(const Timestamp& t) {
  return format_iso8601(t.epoch_s, t.offset_minutes);
}

}  // namespace rechems
