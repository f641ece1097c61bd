#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sumsets/range.hpp"

namespace sumsets::cli {

inline constexpr int kAtlasSchemaVersion = 1;
// Bumped whenever search output could change; cached results from another
// version are never reused.
inline constexpr std::string_view kCodeVersion = "sumsets-1.0.0";

struct AtlasEntry {
  RangeResult result;
  StructureReport report;
};

struct AtlasFailure {
  unsigned h = 1;
  std::size_t k = 1;
  std::string error;
};

struct AtlasFile {
  int schema_version = kAtlasSchemaVersion;
  std::vector<AtlasEntry> entries;  // sorted by (h, k), unique
  std::vector<AtlasFailure> failures;

  // Replaces any entry for the same (h, k).
  void upsert(AtlasEntry entry);
  const AtlasEntry* find(unsigned h, std::size_t k) const;
};

nlohmann::ordered_json to_json(const RangeResult& result);
nlohmann::ordered_json to_json(const StructureReport& report);
nlohmann::ordered_json to_json(const AtlasFile& atlas);

// Both throw ParseError on malformed input and InconsistencyError when a
// witness does not reproduce its size.
RangeResult range_result_from_json(const nlohmann::json& j);
AtlasFile atlas_from_json(const nlohmann::json& j);

std::string dump(const AtlasFile& atlas);
AtlasFile load_atlas(const std::filesystem::path& path);
void save_atlas(const std::filesystem::path& path, const AtlasFile& atlas);

// Lossy views: one row per entry.
std::string to_csv(const AtlasFile& atlas);
std::string to_text(const AtlasFile& atlas);

// "{7, 9, 10}" or "[9, 15]" when the sizes form an interval.
std::string format_sizes(const std::vector<std::uint64_t>& sizes);
// "{7, 9, 10}; missing: 8; complete"
std::string summary_line(const RangeResult& result);

// Writes through a temporary file in the same directory and renames it.
void write_atomically(const std::filesystem::path& path, std::string_view data);
std::string read_file(const std::filesystem::path& path);

}  // namespace sumsets::cli
