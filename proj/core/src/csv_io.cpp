#include "rechems/csv_io.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rechems/timestamp.hpp"
#include "rechems/units.hpp"
#include "text_util.hpp"

namespace rechems {

namespace {
constexpr std::string_view kHeader = "timestamp_iso8601,power_kw";
}

PowerProfile parse_profile_csv(std::string_view text, ProfileKind kind, std::string id,
                               const std::string& source) {
  const auto lines = detail::split_lines(text);
  if (lines.empty() || lines.front() != kHeader) {
    throw std::runtime_error(source + ": header must be " + std::string(kHeader));
  }
  std::vector<double> samples;
  std::int64_t start = 0;
  std::int64_t prev = 0;
  int prev_offset = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::string where = source + " line " + std::to_string(i + 1);
    const auto f = detail::split_fields(lines[i]);
    if (f.size() != 2) throw std::runtime_error(where + ": expected 2 fields");
    Timestamp ts;
    try {
      ts = parse_iso8601(f[0]);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(where + ": " + e.what());
    }
    double v = 0.0;
    if (!detail::parse_double(f[1], v) || !std::isfinite(v)) {
      throw std::runtime_error(where + ": malformed power value '" + std::string(f[1]) + "'");
    }
    if (v < 0.0) {
      throw std::runtime_error(where + (kind == ProfileKind::generation
                                            ? ": negative generation "
                                            : ": negative consumption ") +
                               std::string(f[1]));
    }
    if (samples.empty()) {
      start = ts.epoch_s;
    } else {
      const std::int64_t dt = ts.epoch_s - prev;
      if (dt == 0) {
        throw std::runtime_error(where + ": duplicate timestamp " + std::string(f[0]));
      }
      if (dt < 0) {
        throw std::runtime_error(where + ": timestamp " + std::string(f[0]) +
                                 " is earlier than the previous row");
      }
      if (dt != kSlotSeconds) {
        if (dt % kSlotSeconds == 0) {
          throw std::runtime_error(where + ": gap, missing " +
                                   format_iso8601(prev + kSlotSeconds, prev_offset) +
                                   " before " + std::string(f[0]));
        }
        throw std::runtime_error(where + ": spacing of " + std::to_string(dt) +
                                 " s is not 15 minutes");
      }
    }
    prev = ts.epoch_s;
    prev_offset = ts.offset_minutes;
    // 0.0 - v keeps a zero load at +0.0
    samples.push_back(kind == ProfileKind::load ? 0.0 - v : v);
  }
  if (samples.empty()) throw std::runtime_error(source + ": no data rows");
  return PowerProfile(std::move(id), kind, std::move(samples), start, 0);
}

PowerProfile read_profile_csv(const std::filesystem::path& path, ProfileKind kind, std::string id) {
  if (id.empty()) id = path.stem().string();
  return parse_profile_csv(detail::read_text_file(path), kind, std::move(id), path.string());
}

std::string format_profile_csv(const PowerProfile& profile, int offset_minutes) {
  std::string out(kHeader);
  out += '\n';
  const auto s = profile.samples();
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += format_iso8601(profile.start_epoch_s() + static_cast<std::int64_t>(i) * kSlotSeconds,
                          offset_minutes);
    out += ',';
    out += detail::format_double(profile.kind() == ProfileKind::load ? 0.0 - s[i] : s[i]);
    out += '\n';
  }
  return out;
}

void write_profile_csv(const std::filesystem::path& path, const PowerProfile& profile,
                       int offset_minutes) {
  detail::write_text_file(path, format_profile_csv(profile, offset_minutes));
}

}  // namespace rechems
