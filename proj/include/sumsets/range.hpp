#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sumsets/constructions.hpp"
#include "sumsets/integer_set.hpp"
#include "sumsets/sumset.hpp"

namespace sumsets {

enum class RangeSource { ClosedForm, Search, Merged, Sample };

std::string_view to_string(RangeSource source);
RangeSource parse_range_source(std::string_view text);

/// The achieved sumset sizes |hA| over |A| = k, with one witness per size
/// where one is known.
///
/// `complete` means `sizes` is provably all of R(h, k): the source is a
/// closed form, or a search reached the completeness bound, or a search
/// found every value between the elementary lower and upper bounds.
struct RangeResult {
  unsigned h = 1;
  std::size_t k = 1;
  std::vector<std::uint64_t> sizes;  // strictly increasing
  std::map<std::uint64_t, IntegerSet> witnesses;
  std::optional<std::int64_t> search_bound;
  bool complete = false;
  RangeSource source = RangeSource::Search;

  bool contains(std::uint64_t size) const;
  /// Sizes strictly between min and max that are not achieved.
  std::vector<std::uint64_t> missing() const;

  friend bool operator==(const RangeResult&, const RangeResult&) = default;
};

/// Throws InconsistencyError unless every witness has k elements, generates
/// exactly its key, and every size lies within the elementary bounds.
void validate_result(const RangeResult& result);

/// Least N for which searching subsets of [0, N] provably reaches every
/// size: 4(4h)^{k-1} - 1 for h >= 3, k >= 3; 2^k - 1 for h = 2 (k >= 3);
/// k - 1 whenever R(h, k) is a single value (h = 1 or k <= 2).
/// Throws OverflowError when the value does not fit in int64.
std::int64_t completeness_bound(unsigned h, std::size_t k);

/// Approximate number of canonical k-sets with elements in [0, N].
long double estimated_canonical_sets(std::size_t k, std::int64_t n);

/// R(h, k) sizes where a closed form is known (k <= 3, h <= 2).
std::optional<std::vector<std::uint64_t>> closed_form_sizes(unsigned h,
                                                            std::size_t k);

struct ClosedFormOptions {
  bool attach_witnesses = true;
  /// Cap on sets examined while looking for witnesses the constructions do
  /// not provide. Sizes left without a witness stay in `sizes`.
  std::uint64_t witness_budget = 2'000'000;
};

std::optional<RangeResult> closed_form_range(unsigned h, std::size_t k,
                                             const ClosedFormOptions& opts = {});

struct SearchConfig {
  unsigned h = 1;
  std::size_t k = 1;
  std::int64_t n = 0;  // elements confined to [0, n]
  unsigned parallelism = 1;
  /// Sets examined between progress callbacks; 0 disables them.
  std::uint64_t progress_interval = 0;
  /// Stop after roughly this many sets (0 = unlimited). A run cut short by
  /// the budget is never complete and may depend on thread timing.
  std::uint64_t max_sets = 0;
  /// Stop early once every size in the target has a witness. Defaults to the
  /// whole interval [hk-h+1, binom(h+k-1, h)], which makes the early stop a
  /// proof of completeness.
  bool stop_when_saturated = true;
  std::optional<std::vector<std::uint64_t>> target;
  std::size_t capacity = kDefaultCapacity;
};

/// All canonical sets of one diameter d: {0 < a_2 < ... < a_{k-1} < d}.
struct ShardResult {
  std::int64_t id = 0;
  std::map<std::uint64_t, IntegerSet> witnesses;  // first found per size
  std::uint64_t sets_examined = 0;
  bool truncated = false;

  friend bool operator==(const ShardResult&, const ShardResult&) = default;
};

struct SearchProgress {
  std::uint64_t shards_done = 0;
  std::uint64_t shards_total = 0;
  std::uint64_t sets_examined = 0;
};

struct SearchHooks {
  /// Shards already computed by an earlier run; they are not re-run.
  std::map<std::int64_t, ShardResult> resume;
  /// Called (serialized) after each fully enumerated shard.
  std::function<void(const ShardResult&)> on_shard_done;
  std::function<void(const SearchProgress&)> on_progress;
};

struct SearchStats {
  std::uint64_t sets_examined = 0;
  std::uint64_t shards_total = 0;
  std::uint64_t shards_run = 0;
  std::uint64_t shards_resumed = 0;
  bool saturated = false;
  bool budget_exhausted = false;
};

/// Exhaustive search over canonical sets (min 0, gcd 1, not larger than
/// their reflection) with elements in [0, n]. Sets are visited by
/// increasing diameter, lexicographically within a diameter; each size keeps
/// the first witness visited, i.e. the smallest under witness_less. The
/// result does not depend on `parallelism`.
RangeResult search_range(const SearchConfig& config,
                         const SearchHooks& hooks = {},
                         SearchStats* stats = nullptr);

/// Visits every canonical k-subset of [0, n] in search order.
void for_each_canonical_set(std::size_t k, std::int64_t n,
                            const std::function<void(std::span<const std::int64_t>)>& fn);

struct SampleConfig {
  unsigned h = 1;
  std::size_t k = 1;
  std::int64_t n = 0;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
};

/// Sizes of `count` uniformly random k-subsets of [0, n]. Never complete.
RangeResult sample_range(const SampleConfig& config);

enum class CheckStatus { Pass, Fail, Skipped };
std::string_view to_string(CheckStatus status);

struct StructureCheck {
  std::string name;
  CheckStatus status = CheckStatus::Skipped;
  std::string detail;
};

struct StructureReport {
  std::vector<StructureCheck> checks;
  std::vector<std::uint64_t> missing;

  bool ok() const;
  const StructureCheck* find(std::string_view name) const;
};

/// Checks a result against the known structural facts about R(h, k): the
/// elementary bounds and when they are attained, the empty window
/// [hk-h+2, hk-1], membership of hk, absence of hk-h+2. A failing check
/// means a defect somewhere.
StructureReport verify_structure(const RangeResult& result);

/// Union of the inputs. For each size the smallest canonical witness wins.
/// Throws InconsistencyError when a closed form and a complete search
/// disagree, or a constructed member is missing from a complete input.
RangeResult merge(const std::optional<RangeResult>& closed,
                  const std::optional<RangeResult>& searched,
                  std::span<const FamilyMember> constructed);

}  // namespace sumsets
