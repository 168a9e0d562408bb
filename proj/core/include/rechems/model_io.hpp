#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "rechems/fuzzy.hpp"

namespace rechems {

/// A FIS as stored on disk. The term-set tables and rules are authoritative;
/// the genome is kept when the model came from training.
struct StoredFis {
  FisModel model;
  std::optional<FisGenome> genome;
};

[[nodiscard]] std::string format_fis_json(const FisModel& model,
                                          const std::optional<FisGenome>& genome = std::nullopt);
void write_fis_json(const std::filesystem::path& path, const FisModel& model,
                    const std::optional<FisGenome>& genome = std::nullopt);

/// Accepts documents with explicit "input"/"output"/"rules" tables (for
/// hand-built models) or with only a "genome", which is decoded.
/// Throws std::invalid_argument on schema or range errors.
[[nodiscard]] StoredFis parse_fis_json(std::string_view text);
[[nodiscard]] StoredFis read_fis_json(const std::filesystem::path& path);

}  // namespace rechems
