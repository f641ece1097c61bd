#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>

#include "sumsets/range.hpp"

namespace sumsets::cli {

inline constexpr const char* kCacheDirEnv = "SUMSETS_CACHE_DIR";

// Search results and per-shard checkpoints on disk, keyed by
// (h, k, N, code version). Anything unreadable, from another code version or
// failing witness re-validation is reported to `log` and ignored.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  // $SUMSETS_CACHE_DIR if set and nonempty.
  static std::optional<std::filesystem::path> dir_from_env();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path result_path(unsigned h, std::size_t k, std::int64_t n) const;
  std::filesystem::path checkpoint_path(unsigned h, std::size_t k,
                                        std::int64_t n) const;

  std::optional<RangeResult> load_result(unsigned h, std::size_t k, std::int64_t n,
                                         std::ostream& log) const;
  void store_result(const RangeResult& searched) const;

  std::map<std::int64_t, ShardResult> load_checkpoint(unsigned h, std::size_t k,
                                                      std::int64_t n,
                                                      std::ostream& log) const;
  void store_checkpoint(unsigned h, std::size_t k, std::int64_t n,
                        const std::map<std::int64_t, ShardResult>& shards) const;
  void remove_checkpoint(unsigned h, std::size_t k, std::int64_t n) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace sumsets::cli
