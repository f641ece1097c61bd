#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "sumsets/errors.hpp"
#include "sumsets/range.hpp"

namespace sumsets {

namespace {

// Sizes whose discovery ends the search early.
class Target {
 public:
  Target() = default;
  explicit Target(std::span<const std::uint64_t> sizes) {
    if (sizes.empty()) return;
    lo_ = sizes.front();
    const auto hi = sizes.back();
    in_.assign(static_cast<std::size_t>(hi - lo_) + 1, 0);
    for (auto s : sizes) {
      if (!in_[s - lo_]) ++count_;
      in_[s - lo_] = 1;
    }
  }

  bool active() const { return count_ > 0; }
  std::size_t count() const { return count_; }
  std::size_t width() const { return in_.size(); }
  // Index of `s` in the coverage vector, or npos when not a target size.
  std::size_t index(std::uint64_t s) const {
    if (s < lo_ || s - lo_ >= in_.size() || !in_[s - lo_]) return npos;
    return static_cast<std::size_t>(s - lo_);
  }

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

 private:
  std::uint64_t lo_ = 0;
  std::vector<std::uint8_t> in_;
  std::size_t count_ = 0;
};

struct ShardContext {
  unsigned h;
  std::size_t k;
  const Target* target;
  std::vector<std::uint8_t> covered;  // snapshot from earlier shards
  std::size_t need = 0;
  std::atomic<bool>* stop;
  std::atomic<std::uint64_t>* examined;
  std::uint64_t max_sets;
};

constexpr std::uint64_t kFlushEvery = 1024;

class ShardRunner {
 public:
  ShardRunner(ShardContext& ctx, SizeKernel& kernel, std::int64_t d)
      : ctx_(ctx), kernel_(kernel), d_(d), e_(ctx.k, 0) {
    result_.id = d;
  }

  ShardResult run() {
    const std::size_t k = ctx_.k;
    if (k == 1) {
      visit_leaf();
    } else {
      e_[k - 1] = d_;
      if (k == 2) {
        if (d_ == 1) visit_leaf();
      } else {
        descend(1, d_);
      }
    }
    flush();
    return std::move(result_);
  }

 private:
  // Chooses e_[pos] for interior positions 1..k-2; g is the running gcd.
  void descend(std::size_t pos, std::int64_t g) {
    if (halted_) return;
    const std::size_t k = ctx_.k;
    const std::size_t m = k - 2;  // interior count
    std::int64_t lo = e_[pos - 1] + 1;
    std::int64_t hi = d_ - 1 - static_cast<std::int64_t>(m - pos);
    // The first gap may not exceed the last one (reflection-minimal), so
    // e_1 <= d - e_{k-2}.
    if (m == 1) {
      hi = std::min(hi, d_ / 2);
    } else if (pos == 1) {
      hi = std::min(hi, (d_ - static_cast<std::int64_t>(m) + 1) / 2);
    } else if (pos == m) {
      hi = std::min(hi, d_ - e_[1]);
    }
    for (std::int64_t v = lo; v <= hi && !halted_; ++v) {
      e_[pos] = v;
      const std::int64_t ng = std::gcd(g, v);
      if (pos == m) {
        if (ng == 1) visit_leaf();
      } else {
        descend(pos + 1, ng);
      }
    }
  }

  bool reflection_minimal() const {
    const std::size_t gaps = ctx_.k - 1;
    for (std::size_t i = 0; i < gaps / 2; ++i) {
      const auto fwd = e_[i + 1] - e_[i];
      const auto bwd = e_[gaps - i] - e_[gaps - i - 1];
      if (fwd != bwd) return fwd < bwd;
    }
    return true;
  }

  void visit_leaf() {
    if (!reflection_minimal()) return;
    const auto size = kernel_.size(e_, ctx_.h);
    ++result_.sets_examined;
    if (++pending_ >= kFlushEvery) flush();

    auto [it, inserted] = result_.witnesses.try_emplace(size);
    if (inserted) {
      it->second = IntegerSet(e_);
      if (ctx_.target->active()) {
        const auto idx = ctx_.target->index(size);
        if (idx != Target::npos && !ctx_.covered[idx]) {
          ctx_.covered[idx] = 1;
          if (--ctx_.need == 0) {
            result_.truncated = true;
            halted_ = true;
          }
        }
      }
    }
  }

  void flush() {
    if (pending_ == 0) return;
    const auto total = ctx_.examined->fetch_add(pending_) + pending_;
    pending_ = 0;
    if (ctx_.max_sets != 0 && total >= ctx_.max_sets) ctx_.stop->store(true);
    if (ctx_.stop->load(std::memory_order_relaxed)) {
      result_.truncated = true;
      halted_ = true;
    }
  }

  ShardContext& ctx_;
  SizeKernel& kernel_;
  std::int64_t d_;
  std::vector<std::int64_t> e_;
  ShardResult result_;
  std::uint64_t pending_ = 0;
  bool halted_ = false;
};

void validate(const SearchConfig& cfg) {
  if (cfg.h == 0) throw InvalidArgument("search needs h >= 1");
  if (cfg.k == 0) throw InvalidArgument("search needs k >= 1");
  if (cfg.n < static_cast<std::int64_t>(cfg.k) - 1) {
    throw InvalidArgument("search bound N = " + std::to_string(cfg.n) +
                          " is below k - 1 = " + std::to_string(cfg.k - 1) +
                          "; no k-subset of [0, N] exists");
  }
  if (cfg.parallelism == 0) throw InvalidArgument("parallelism must be >= 1");
}

std::vector<std::uint64_t> full_interval(unsigned h, std::size_t k) {
  const auto lo = min_sumset_size(h, k);
  const auto hi = max_sumset_size(h, k);
  std::vector<std::uint64_t> v(static_cast<std::size_t>(hi - lo) + 1);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

// Largest target we are willing to track explicitly.
constexpr std::uint64_t kMaxTargetWidth = std::uint64_t{1} << 26;

}  // namespace

void for_each_canonical_set(
    std::size_t k, std::int64_t n,
    const std::function<void(std::span<const std::int64_t>)>& fn) {
  if (k == 0) throw InvalidArgument("k must be >= 1");
  // Plain walk that tests canonicity with canonical_form(); slower than the
  // pruned shard walker but shares none of its shortcuts.
  std::vector<std::int64_t> e(k, 0);
  if (k == 1) {
    fn(e);
    return;
  }
  const std::size_t m = k - 2;
  for (std::int64_t d = static_cast<std::int64_t>(k) - 1; d <= n; ++d) {
    e[k - 1] = d;
    if (k == 2) {
      if (d == 1) fn(e);
      continue;
    }
    std::function<void(std::size_t, std::int64_t)> rec =
        [&](std::size_t pos, std::int64_t g) {
          for (std::int64_t v = e[pos - 1] + 1;
               v <= d - 1 - static_cast<std::int64_t>(m - pos); ++v) {
            e[pos] = v;
            const auto ng = std::gcd(g, v);
            if (pos < m) {
              rec(pos + 1, ng);
              continue;
            }
            if (ng != 1) continue;
            IntegerSet s(e);
            if (canonical_form(s) == s) fn(e);
          }
        };
    rec(1, d);
  }
}

RangeResult search_range(const SearchConfig& cfg, const SearchHooks& hooks,
                         SearchStats* stats_out) {
  validate(cfg);

  Target target;
  bool target_is_full = false;
  if (cfg.stop_when_saturated) {
    if (cfg.target) {
      auto t = *cfg.target;
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
      target = Target(t);
      try {
        const auto lo = min_sumset_size(cfg.h, cfg.k);
        const auto hi = max_sumset_size(cfg.h, cfg.k);
        target_is_full = !t.empty() && t.front() == lo && t.back() == hi &&
                         t.size() - 1 == hi - lo;
      } catch (const OverflowError&) {
      }
    } else {
      try {
        const auto lo = min_sumset_size(cfg.h, cfg.k);
        const auto hi = max_sumset_size(cfg.h, cfg.k);
        if (hi - lo < kMaxTargetWidth) {
          target = Target(full_interval(cfg.h, cfg.k));
          target_is_full = true;
        }
      } catch (const OverflowError&) {
        // Upper bound beyond 64 bits: no saturation stop.
      }
    }
  }

  const std::int64_t d_lo = cfg.k == 1 ? 0 : static_cast<std::int64_t>(cfg.k) - 1;
  const std::int64_t d_hi = cfg.k == 1 ? 0 : (cfg.k == 2 ? 1 : cfg.n);
  const auto n_shards = static_cast<std::size_t>(d_hi - d_lo + 1);

  std::vector<std::optional<ShardResult>> results(n_shards);
  std::vector<std::uint8_t> done(n_shards, 0);
  SearchStats stats;
  stats.shards_total = n_shards;
  for (const auto& [id, shard] : hooks.resume) {
    if (id < d_lo || id > d_hi || shard.truncated) continue;
    const auto idx = static_cast<std::size_t>(id - d_lo);
    results[idx] = shard;
    done[idx] = 1;
    ++stats.shards_resumed;
  }

  std::mutex mu;
  std::size_t prefix_end = 0;
  std::vector<std::uint8_t> prefix_cover(target.width(), 0);
  std::size_t prefix_covered = 0;
  std::size_t cutoff = n_shards;
  bool saturated = false;
  std::uint64_t last_report = 0;
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> examined{0};
  std::atomic<std::size_t> next_idx{0};
  std::uint64_t shards_done = stats.shards_resumed;

  // Requires `mu`.
  auto advance_prefix = [&] {
    while (prefix_end < n_shards && done[prefix_end]) {
      if (target.active()) {
        for (const auto& [size, w] : results[prefix_end]->witnesses) {
          const auto idx = target.index(size);
          if (idx != Target::npos && !prefix_cover[idx]) {
            prefix_cover[idx] = 1;
            ++prefix_covered;
          }
        }
      }
      ++prefix_end;
      if (target.active() && !saturated && prefix_covered == target.count()) {
        saturated = true;
        cutoff = prefix_end;
        stop.store(true);
      }
    }
  };

  {
    std::lock_guard lock(mu);
    advance_prefix();
  }

  auto worker = [&] {
    SizeKernel kernel(cfg.capacity);
    for (;;) {
      if (stop.load()) return;
      const auto idx = next_idx.fetch_add(1);
      if (idx >= n_shards) return;
      if (results[idx]) continue;  // resumed

      ShardContext ctx{cfg.h, cfg.k, &target, {}, 0, &stop, &examined,
                       cfg.max_sets};
      if (target.active()) {
        std::lock_guard lock(mu);
        ctx.covered = prefix_cover;
        ctx.need = target.count() - prefix_covered;
      }
      ShardResult shard = ShardRunner(ctx, kernel, d_lo + static_cast<std::int64_t>(idx)).run();

      std::lock_guard lock(mu);
      const bool full = !shard.truncated;
      results[idx] = std::move(shard);
      done[idx] = 1;
      ++shards_done;
      ++stats.shards_run;
      if (full && hooks.on_shard_done) hooks.on_shard_done(*results[idx]);
      advance_prefix();
      const auto seen = examined.load();
      if (hooks.on_progress && cfg.progress_interval != 0 &&
          seen - last_report >= cfg.progress_interval) {
        last_report = seen;
        hooks.on_progress({shards_done, n_shards, seen});
      }
    }
  };

  if (cfg.parallelism == 1 || n_shards == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    const auto workers = std::min<std::size_t>(cfg.parallelism, n_shards);
    threads.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) threads.emplace_back(worker);
  }

  stats.sets_examined = examined.load();
  stats.saturated = saturated;
  stats.budget_exhausted =
      !saturated && cfg.max_sets != 0 && stats.sets_examined >= cfg.max_sets;

  RangeResult out;
  out.h = cfg.h;
  out.k = cfg.k;
  out.search_bound = cfg.n;
  out.source = RangeSource::Search;
  bool all_shards_full = true;
  for (std::size_t i = 0; i < cutoff; ++i) {
    if (!results[i] || (results[i]->truncated && !saturated)) {
      all_shards_full = false;
    }
    if (!results[i]) continue;
    for (const auto& [size, w] : results[i]->witnesses) {
      out.witnesses.try_emplace(size, w);
    }
  }
  for (const auto& [size, w] : out.witnesses) out.sizes.push_back(size);

  bool reached_bound = false;
  try {
    reached_bound = cfg.n >= completeness_bound(cfg.h, cfg.k);
  } catch (const OverflowError&) {
  }
  out.complete = (saturated && target_is_full) ||
                 (!saturated && all_shards_full && !stats.budget_exhausted &&
                  reached_bound);

  if (stats_out) *stats_out = stats;
  return out;
}

}  // namespace sumsets
