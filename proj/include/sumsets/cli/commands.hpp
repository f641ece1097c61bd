#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sumsets/cli/atlas.hpp"
#include "sumsets/range.hpp"

namespace sumsets::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;       // bad input, capacity, I/O
inline constexpr int kExitCheckFailed = 2;  // a verification failed: a defect

enum class Format { Text, Json, Csv };
Format parse_format(const std::string& text);

struct SumsetOptions {
  bool oracle = false;
  bool intervals = false;  // one interval per line
};

struct RangeOptions {
  std::optional<std::int64_t> bound;
  bool complete = false;
  std::optional<std::uint64_t> sample;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool resume = false;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> cache_dir;
  // --complete is refused above this many estimated canonical sets
  std::uint64_t max_sets = 2'000'000'000;
  bool progress = false;
  Format format = Format::Text;
};

struct AtlasOptions {
  unsigned h_lo = 1, h_hi = 1;
  std::size_t k_lo = 1, k_hi = 1;
  RangeOptions range;  // N policy, jobs, cache; `out` is the atlas file
};

// The computation behind `range`, without printing. `log` receives cache and
// progress notes.
AtlasEntry run_range(unsigned h, std::size_t k, const RangeOptions& opts,
                     std::ostream& log);

// Each returns an exit code and reports errors on `err`.
int cmd_sumset(const std::string& literal, unsigned h, const SumsetOptions& opts,
               std::ostream& out, std::ostream& err);
int cmd_construct(const std::string& family, const std::vector<std::string>& params,
                  std::ostream& out, std::ostream& err);
int cmd_range(unsigned h, std::size_t k, const RangeOptions& opts,
              std::ostream& out, std::ostream& err);
int cmd_atlas(const AtlasOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(std::ostream& out, std::ostream& err);

// "1..3" or "4" -> inclusive bounds; throws ParseError.
std::pair<std::uint64_t, std::uint64_t> parse_span(const std::string& text);

}  // namespace sumsets::cli
