#include "sumsets/cli/commands.hpp"

#include <chrono>
#include <charconv>
#include <cmath>
#include <map>
#include <thread>

#include "sumsets/cli/cache.hpp"
#include "sumsets/cli/checks.hpp"
#include "sumsets/constructions.hpp"
#include "sumsets/errors.hpp"
#include "sumsets/oracle.hpp"
#include "sumsets/sumset.hpp"

namespace sumsets::cli {

namespace {

// Used by --sample when no --bound is given.
constexpr std::int64_t kDefaultSampleBound = std::int64_t{1} << 20;

std::int64_t parse_int(const std::string& text, const std::string& what) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || p != text.data() + text.size()) {
    throw ParseError("bad value for " + what + ": '" + text + "'");
  }
  return v;
}

std::string interval_text(std::int64_t lo, std::int64_t hi) {
  return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

std::string where(unsigned h, std::size_t k) {
  return "R(" + std::to_string(h) + "," + std::to_string(k) + ")";
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InconsistencyError& e) {
    err << "error: inconsistency (defect): " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

std::string report_line(const StructureReport& report) {
  std::string out = "checks:";
  for (const auto& c : report.checks) {
    out += " " + c.name + "=" + std::string(to_string(c.status));
  }
  return out;
}

void print_entry_text(const AtlasEntry& e, std::ostream& out) {
  const auto& r = e.result;
  out << where(r.h, r.k) << "  N="
      << (r.search_bound ? std::to_string(*r.search_bound) : std::string("-"))
      << "  source=" << to_string(r.source) << "\n";
  out << summary_line(r) << "\n";
  out << "  size  witness\n";
  for (auto s : r.sizes) {
    auto it = r.witnesses.find(s);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%6llu  ", static_cast<unsigned long long>(s));
    out << buf << (it == r.witnesses.end() ? std::string("-") : to_string(it->second))
        << "\n";
  }
  out << report_line(e.report) << "\n";
  for (const auto& c : e.report.checks) {
    if (c.status == CheckStatus::Fail) out << "FAILED " << c.name << ": " << c.detail << "\n";
  }
}

std::optional<ResultCache> open_cache(const RangeOptions& opts) {
  auto dir = opts.cache_dir ? opts.cache_dir : ResultCache::dir_from_env();
  if (!dir) return std::nullopt;
  return ResultCache(*dir);
}

RangeResult run_search(unsigned h, std::size_t k, std::int64_t n,
                       const RangeOptions& opts, std::ostream& log) {
  auto cache = open_cache(opts);
  if (opts.resume && !cache) {
    throw InvalidArgument(std::string("--resume needs a cache directory (--cache-dir or ") +
                          kCacheDirEnv + ")");
  }
  if (cache) {
    if (auto hit = cache->load_result(h, k, n, log)) {
      log << "cache: using " << cache->result_path(h, k, n).string() << "\n";
      return *hit;
    }
  }

  SearchConfig cfg;
  cfg.h = h;
  cfg.k = k;
  cfg.n = n;
  cfg.parallelism = opts.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                   : opts.jobs;
  cfg.progress_interval = opts.progress ? 10'000'000 : 0;

  SearchHooks hooks;
  std::map<std::int64_t, ShardResult> finished;
  if (cache && opts.resume) {
    finished = cache->load_checkpoint(h, k, n, log);
    hooks.resume = finished;
    log << "resume: " << finished.size() << " shards from checkpoint\n";
  }
  using clock = std::chrono::steady_clock;
  auto last_write = clock::now();
  if (cache) {
    hooks.on_shard_done = [&](const ShardResult& s) {
      finished[s.id] = s;
      if (clock::now() - last_write >= std::chrono::seconds(2)) {
        cache->store_checkpoint(h, k, n, finished);
        last_write = clock::now();
      }
    };
  }
  if (opts.progress) {
    hooks.on_progress = [&](const SearchProgress& p) {
      log << "progress: " << p.shards_done << "/" << p.shards_total << " shards, "
          << p.sets_examined << " sets\n";
    };
  }

  SearchStats stats;
  auto result = search_range(cfg, hooks, &stats);
  if (opts.progress) {
    log << "search: " << stats.sets_examined << " sets, " << stats.shards_run
        << " shards run, " << stats.shards_resumed << " resumed"
        << (stats.saturated ? ", stopped once every size was found" : "") << "\n";
  }
  if (cache) {
    cache->store_result(result);
    cache->remove_checkpoint(h, k, n);
  }
  return result;
}

}  // namespace

Format parse_format(const std::string& text) {
  if (text == "text") return Format::Text;
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  throw ParseError("unknown format '" + text + "' (text, json, csv)");
}

std::pair<std::uint64_t, std::uint64_t> parse_span(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = parse_int(text, "range");
    if (v < 0) throw ParseError("negative range bound '" + text + "'");
    return {static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(v)};
  }
  const auto lo = parse_int(text.substr(0, dots), "range");
  const auto hi = parse_int(text.substr(dots + 2), "range");
  if (lo < 0 || hi < 0) throw ParseError("negative range bound '" + text + "'");
  return {static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi)};
}

AtlasEntry run_range(unsigned h, std::size_t k, const RangeOptions& opts,
                     std::ostream& log) {
  if (h == 0 || k == 0) throw InvalidArgument("h and k must be at least 1");
  if (opts.complete && opts.bound) {
    throw InvalidArgument("--complete and --bound are exclusive");
  }
  if (opts.complete && opts.sample) {
    throw InvalidArgument("--complete and --sample are exclusive");
  }
  if (!opts.complete && !opts.bound && !opts.sample) {
    throw InvalidArgument("one of --complete, --bound N or --sample COUNT is required");
  }

  const auto closed = closed_form_range(h, k);
  std::optional<RangeResult> searched;

  if (opts.sample) {
    SampleConfig sc{h, k, opts.bound.value_or(kDefaultSampleBound), *opts.sample,
                    opts.seed};
    searched = sample_range(sc);
    if (closed) {
      for (auto s : searched->sizes) {
        if (!closed->contains(s)) {
          throw InconsistencyError(where(h, k) + ": sampled size " + std::to_string(s) +
                                   " outside the closed form");
        }
      }
    }
    AtlasEntry e{merge(std::nullopt, searched, {}), {}};
    validate_result(e.result);
    e.report = verify_structure(e.result);
    return e;
  }

  std::int64_t n = 0;
  if (opts.complete) {
    n = completeness_bound(h, k);
    const auto extent = static_cast<long double>(h) * static_cast<long double>(n) + 1;
    if (extent > static_cast<long double>(kDefaultCapacity)) {
      throw CapacityError(where(h, k) + ": completeness bound N = " + std::to_string(n) +
                          " needs h*N+1 bits, over the capacity " +
                          std::to_string(kDefaultCapacity));
    }
    // A full-interval closed form lets the search stop as soon as every size
    // has a witness, so the estimate does not apply.
    const bool saturates = closed && closed->sizes.front() == min_sumset_size(h, k) &&
                           closed->sizes.back() == max_sumset_size(h, k) &&
                           closed->missing().empty();
    const auto estimate = estimated_canonical_sets(k, n);
    if (!saturates && estimate > static_cast<long double>(opts.max_sets)) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.2Le", estimate);
      throw CapacityError(where(h, k) + ": a complete search to N = " + std::to_string(n) +
                          " visits about " + buf + " canonical sets, over --max-sets " +
                          std::to_string(opts.max_sets) +
                          "; use --bound N for a verified lower bound set");
    }
  } else {
    n = *opts.bound;
    if (n < static_cast<std::int64_t>(k) - 1) {
      throw InvalidArgument("bound N = " + std::to_string(n) + " is below k-1; no " +
                            std::to_string(k) + "-subset of [0,N] exists");
    }
  }
  searched = run_search(h, k, n, opts, log);

  std::vector<FamilyMember> members;
  if (h >= 2) {
    members = members_from_progressions(h, k);
    if (k >= 3) {
      auto more = members_from_two_intervals(h, k);
      members.insert(members.end(), more.begin(), more.end());
    }
  }

  AtlasEntry e{merge(closed, searched, members), {}};
  validate_result(e.result);
  e.report = verify_structure(e.result);
  return e;
}

int cmd_sumset(const std::string& literal, unsigned h, const SumsetOptions& opts,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto a = parse_integer_set(literal);
    if (a.empty()) throw InvalidArgument("the set is empty");
    // work on A - min(A) and shift the answer back by h*min(A)
    const auto shifted = AffineMap{1, -a.min()}.apply(a);
    const auto offset128 = static_cast<__int128>(h) * a.min();
    if (offset128 > INT64_MAX || offset128 < INT64_MIN) {
      throw OverflowError("h*min(A) out of 64-bit range");
    }
    const auto offset = static_cast<std::int64_t>(offset128);
    const auto value = hfold_sumset(shifted, h);

    std::string runs;
    for (const auto& iv : value.intervals()) {
      runs += (runs.empty() ? "" : " ") + interval_text(iv.lo + offset, iv.hi + offset);
    }
    if (opts.oracle) {
      const auto slow = oracle::sumset_by_definition(shifted, h);
      if (slow.intervals() != value.intervals()) {
        out << "size " << value.cardinality() << "; ORACLE DISAGREES (oracle size "
            << slow.cardinality() << ")\n";
        return kExitCheckFailed;
      }
      out << "size " << value.cardinality() << "; oracle agrees\n";
      out << "intervals " << runs << "\n";
    } else {
      out << "size " << value.cardinality() << "; intervals " << runs << "\n";
    }
    if (opts.intervals) {
      for (const auto& iv : value.intervals()) {
        out << interval_text(iv.lo + offset, iv.hi + offset) << " length " << iv.length()
            << "\n";
      }
    }
    return kExitOk;
  });
}

int cmd_construct(const std::string& family, const std::vector<std::string>& params,
                  std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::map<std::string, std::int64_t> p;
    for (const auto& kv : params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ParseError("expected key=value, got '" + kv + "'");
      auto key = kv.substr(0, eq);
      if (key == "ell") key = "l";
      p[key] = parse_int(kv.substr(eq + 1), key);
    }
    auto take = [&](const std::string& key) {
      auto it = p.find(key);
      if (it == p.end()) throw ParseError(family + " needs parameter " + key + "=");
      const auto v = it->second;
      p.erase(it);
      return v;
    };

    const auto h_raw = take("h");
    if (h_raw < 0 || h_raw > UINT32_MAX) throw InvalidArgument("h out of range");
    const auto h = static_cast<unsigned>(h_raw);

    IntegerSet witness;
    std::uint64_t predicted = 0;
    std::string label;
    if (family == "progression") {
      const ProgressionOfIntervalsSpec spec{take("a"), take("l"), take("b")};
      if (!p.empty()) throw ParseError("unknown parameter " + p.begin()->first);
      if (h == 0) throw InvalidArgument("progression needs h >= 1");
      witness = build_progression_of_intervals(spec);
      predicted = predicted_size_progression(spec, h);
      label = std::string("progression, ") +
              (progression_blocks_overlap(spec, h) ? "overlapping" : "disjoint") +
              " branch";
    } else if (family == "two-interval") {
      const auto a = take("a"), b = take("b"), c = take("c");
      if (!p.empty()) throw ParseError("unknown parameter " + p.begin()->first);
      if (c < 0 || a < 0) throw InvalidSpec("two-interval requires a, c >= 0");
      if (b <= a) throw InvalidSpec("two-interval requires a < b");
      if (h < 2) throw InvalidArgument("two-interval needs h >= 2");
      if (a == c) {
        // [0,a] u [b,b+a] = {0,b} + [0,a]
        const ProgressionOfIntervalsSpec spec{a + 1, 2, b};
        witness = build_progression_of_intervals(spec);
        predicted = predicted_size_progression(spec, h);
        label = "a = c: handled as progression(a=" + std::to_string(a + 1) +
                ",l=2,b=" + std::to_string(b) + ")";
      } else {
        const auto spec = a < c ? reduce_two_interval(a, b, c) : TwoIntervalSpec{a, b, c};
        witness = IntegerSet::interval(0, a).unite(IntegerSet::interval(b, b + c));
        predicted = predicted_size_two_interval(spec, h);
        const auto i0 = two_interval_i0(spec, h);
        label = "two-interval, i0 = " + std::to_string(i0);
        if (a < c) {
          label += ", mirrored to (a=" + std::to_string(spec.a) + ",b=" +
                   std::to_string(spec.b) + ",c=" + std::to_string(spec.c) + ")";
        }
      }
    } else {
      throw InvalidArgument("unknown family '" + family + "' (progression, two-interval)");
    }

    const auto kernel = sumset_size(witness, h);
    out << "witness " << to_string(witness) << "\n";
    out << "k " << witness.size() << "\n";
    out << "h " << h << "\n";
    out << "family " << label << "\n";
    out << "predicted " << predicted << "\n";
    out << "kernel " << kernel << "\n";
    if (kernel != predicted) {
      out << "size " << predicted << ", MISMATCH\n";
      return kExitCheckFailed;
    }
    out << "size " << kernel << ", verified\n";
    return kExitOk;
  });
}

int cmd_range(unsigned h, std::size_t k, const RangeOptions& opts, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    const auto entry = run_range(h, k, opts, err);
    if (opts.out) {
      AtlasFile atlas;
      if (std::filesystem::exists(*opts.out)) atlas = load_atlas(*opts.out);
      atlas.upsert(entry);
      save_atlas(*opts.out, atlas);
    }
    AtlasFile single;
    single.entries.push_back(entry);
    switch (opts.format) {
      case Format::Text:
        print_entry_text(entry, out);
        break;
      case Format::Json:
        out << dump(single);
        break;
      case Format::Csv:
        out << to_csv(single);
        break;
    }
    return entry.report.ok() ? kExitOk : kExitCheckFailed;
  });
}

int cmd_atlas(const AtlasOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.h_lo > opts.h_hi || opts.k_lo > opts.k_hi) {
      throw InvalidArgument("empty range");
    }
    if (opts.h_lo == 0 || opts.k_lo == 0) throw InvalidArgument("h and k must be at least 1");
    RangeOptions cell = opts.range;
    cell.out.reset();
    AtlasFile atlas;
    for (auto h = opts.h_lo; h <= opts.h_hi; ++h) {
      for (auto k = opts.k_lo; k <= opts.k_hi; ++k) {
        try {
          atlas.upsert(run_range(h, k, cell, err));
        } catch (const std::exception& e) {
          err << where(h, k) << ": " << e.what() << "\n";
          atlas.failures.push_back({h, k, e.what()});
        }
      }
    }
    if (opts.range.out) save_atlas(*opts.range.out, atlas);
    switch (opts.range.format) {
      case Format::Text:
        out << to_text(atlas);
        break;
      case Format::Json:
        out << dump(atlas);
        break;
      case Format::Csv:
        out << to_csv(atlas);
        break;
    }
    if (!atlas.failures.empty()) return kExitError;
    for (const auto& e : atlas.entries) {
      if (!e.report.ok()) return kExitCheckFailed;
    }
    return kExitOk;
  });
}

int cmd_verify(std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    bool ok = true;
    for (const auto& o : checks::run_invariant_suite()) {
      ok = ok && o.ok();
      out << (o.ok() ? "PASS " : "FAIL ") << o.name << " (" << o.cases << " cases";
      if (o.failures) out << ", " << o.failures << " failed; first: " << o.first_failure;
      out << ")\n";
    }
    out << (ok ? "all checks passed" : "some checks FAILED") << "\n";
    return ok ? kExitOk : kExitCheckFailed;
  });
}

}  // namespace sumsets::cli
