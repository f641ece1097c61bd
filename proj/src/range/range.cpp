#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <string>

#include "sumsets/errors.hpp"
#include "sumsets/range.hpp"

namespace sumsets {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("completeness bound exceeds 64-bit range");
  }
  return r;
}

void keep_smaller_witness(std::map<std::uint64_t, IntegerSet>& witnesses,
                          std::uint64_t size, IntegerSet w) {
  auto it = witnesses.find(size);
  if (it == witnesses.end()) {
    witnesses.emplace(size, std::move(w));
  } else if (witness_less(w, it->second)) {
    it->second = std::move(w);
  }
}

std::string list_sizes(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (auto x : v) {
    if (!s.empty()) s += ",";
    s += std::to_string(x);
  }
  return s;
}

// Diameter cap for the witness search behind closed_form_range.
constexpr std::int64_t kWitnessSearchMaxN = 1 << 16;

}  // namespace

std::string_view to_string(RangeSource source) {
  switch (source) {
    case RangeSource::ClosedForm:
      return "closed-form";
    case RangeSource::Search:
      return "search";
    case RangeSource::Merged:
      return "merged";
    case RangeSource::Sample:
      return "sample";
  }
  return "unknown";
}

RangeSource parse_range_source(std::string_view text) {
  if (text == "closed-form") return RangeSource::ClosedForm;
  if (text == "search") return RangeSource::Search;
  if (text == "merged") return RangeSource::Merged;
  if (text == "sample") return RangeSource::Sample;
  throw ParseError("unknown range source '" + std::string(text) + "'");
}

bool RangeResult::contains(std::uint64_t size) const {
  return std::binary_search(sizes.begin(), sizes.end(), size);
}

std::vector<std::uint64_t> RangeResult::missing() const {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    for (auto s = sizes[i - 1] + 1; s < sizes[i]; ++s) out.push_back(s);
  }
  return out;
}

void validate_result(const RangeResult& r) {
  const std::string where =
      "R(" + std::to_string(r.h) + "," + std::to_string(r.k) + ")";
  if (!std::is_sorted(r.sizes.begin(), r.sizes.end()) ||
      std::adjacent_find(r.sizes.begin(), r.sizes.end()) != r.sizes.end()) {
    throw InconsistencyError(where + ": sizes not strictly increasing");
  }
  if (!r.sizes.empty()) {
    if (r.sizes.front() < min_sumset_size(r.h, r.k)) {
      throw InconsistencyError(where + ": size below hk-h+1");
    }
    try {
      if (r.sizes.back() > max_sumset_size(r.h, r.k)) {
        throw InconsistencyError(where + ": size above binom(h+k-1,h)");
      }
    } catch (const OverflowError&) {
    }
  }
  for (const auto& [size, w] : r.witnesses) {
    if (!r.contains(size)) {
      throw InconsistencyError(where + ": witness for unlisted size " +
                               std::to_string(size));
    }
    if (w.size() != r.k) {
      throw InconsistencyError(where + ": witness " + to_string(w) +
                               " does not have k elements");
    }
    const auto actual = sumset_size(w, r.h);
    if (actual != size) {
      throw InconsistencyError(where + ": witness " + to_string(w) + " gives " +
                               std::to_string(actual) + ", not " +
                               std::to_string(size));
    }
  }
}

std::int64_t completeness_bound(unsigned h, std::size_t k) {
  if (h == 0 || k == 0) throw InvalidArgument("completeness_bound needs h, k >= 1");
  if (h == 1 || k <= 2) return static_cast<std::int64_t>(k) - 1;
  if (h == 2) {
    if (k >= 63) throw OverflowError("completeness bound exceeds 64-bit range");
    return (std::int64_t{1} << k) - 1;
  }
  std::int64_t v = 4;
  for (std::size_t i = 1; i < k; ++i) v = checked_mul(v, 4 * std::int64_t{h});
  return v - 1;
}

long double estimated_canonical_sets(std::size_t k, std::int64_t n) {
  if (k <= 1) return 1.0L;
  if (n < static_cast<std::int64_t>(k) - 1) return 0.0L;
  // binom(n, k-1) / 2
  long double v = 1.0L;
  for (std::size_t i = 1; i < k; ++i) {
    v = v * static_cast<long double>(n - static_cast<std::int64_t>(k) + 1 +
                                     static_cast<std::int64_t>(i)) /
        static_cast<long double>(i);
  }
  return v / 2.0L;
}

std::optional<std::vector<std::uint64_t>> closed_form_sizes(unsigned h,
                                                            std::size_t k) {
  if (h == 0 || k == 0) throw InvalidArgument("closed_form_sizes needs h, k >= 1");
  if (k == 1) return std::vector<std::uint64_t>{1};
  if (k == 2) return std::vector<std::uint64_t>{std::uint64_t{h} + 1};
  if (h == 1) return std::vector<std::uint64_t>{k};
  if (h == 2) {
    std::vector<std::uint64_t> v;
    for (auto s = std::uint64_t{2} * k - 1; s <= binomial(k + 1, 2); ++s) {
      v.push_back(s);
    }
    return v;
  }
  if (k == 3) {
    const auto top = binomial(std::uint64_t{h} + 2, 2);
    std::set<std::uint64_t> s;
    for (std::uint64_t ell = 1; ell <= h; ++ell) s.insert(top - binomial(ell, 2));
    return std::vector<std::uint64_t>(s.begin(), s.end());
  }
  return std::nullopt;
}

std::optional<RangeResult> closed_form_range(unsigned h, std::size_t k,
                                             const ClosedFormOptions& opts) {
  auto sizes = closed_form_sizes(h, k);
  if (!sizes) return std::nullopt;

  RangeResult r;
  r.h = h;
  r.k = k;
  r.sizes = *sizes;
  r.complete = true;
  r.source = RangeSource::ClosedForm;
  if (!opts.attach_witnesses) return r;

  if (k <= 2 || h == 1) {
    r.witnesses.emplace(r.sizes.front(),
                        IntegerSet::interval(0, static_cast<std::int64_t>(k) - 1));
    return r;
  }

  for (const auto& family :
       {members_from_progressions(h, k), members_from_two_intervals(h, k)}) {
    for (const auto& m : family) {
      if (!r.contains(m.size())) {
        throw InconsistencyError(m.provenance() + " produced size " +
                                 std::to_string(m.size()) +
                                 " outside the closed form for R(" +
                                 std::to_string(h) + "," + std::to_string(k) + ")");
      }
      keep_smaller_witness(r.witnesses, m.size(), canonical_form(m.witness()));
    }
  }

  SearchConfig cfg;
  cfg.h = h;
  cfg.k = k;
  cfg.n = std::max<std::int64_t>(static_cast<std::int64_t>(k) - 1,
                                 kWitnessSearchMaxN);
  try {
    cfg.n = std::min(cfg.n, completeness_bound(h, k));
  } catch (const OverflowError&) {
  }
  cfg.max_sets = opts.witness_budget;
  cfg.target = r.sizes;
  const auto found = search_range(cfg);
  for (const auto& [size, w] : found.witnesses) {
    if (!r.contains(size)) {
      throw InconsistencyError("search found size " + std::to_string(size) +
                               " outside the closed form for R(" +
                               std::to_string(h) + "," + std::to_string(k) + ")");
    }
    keep_smaller_witness(r.witnesses, size, w);
  }
  return r;
}

RangeResult sample_range(const SampleConfig& cfg) {
  if (cfg.h == 0 || cfg.k == 0) throw InvalidArgument("sampling needs h, k >= 1");
  if (cfg.n < static_cast<std::int64_t>(cfg.k) - 1) {
    throw InvalidArgument("sampling bound N is below k - 1");
  }
  std::mt19937_64 rng(cfg.seed);
  RangeResult r;
  r.h = cfg.h;
  r.k = cfg.k;
  r.search_bound = cfg.n;
  r.source = RangeSource::Sample;
  SizeKernel kernel;
  std::vector<std::int64_t> chosen;
  for (std::uint64_t i = 0; i < cfg.count; ++i) {
    // Floyd's algorithm: k distinct values from [0, n].
    chosen.clear();
    for (auto j = cfg.n + 1 - static_cast<std::int64_t>(cfg.k); j <= cfg.n; ++j) {
      const auto t = std::uniform_int_distribution<std::int64_t>(0, j)(rng);
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
        chosen.push_back(t);
      } else {
        chosen.push_back(j);
      }
    }
    auto w = canonical_form(IntegerSet(chosen));
    const auto size = kernel.size(w.elements(), cfg.h);
    keep_smaller_witness(r.witnesses, size, std::move(w));
  }
  for (const auto& [size, w] : r.witnesses) r.sizes.push_back(size);
  return r;
}

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "FAIL";
    case CheckStatus::Skipped:
      return "skipped";
  }
  return "unknown";
}

bool StructureReport::ok() const {
  return std::none_of(checks.begin(), checks.end(), [](const StructureCheck& c) {
    return c.status == CheckStatus::Fail;
  });
}

const StructureCheck* StructureReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

StructureReport verify_structure(const RangeResult& r) {
  if (r.sizes.empty()) throw InvalidArgument("verify_structure: empty result");
  StructureReport report;
  report.missing = r.missing();
  auto add = [&](std::string name, CheckStatus status, std::string detail) {
    report.checks.push_back({std::move(name), status, std::move(detail)});
  };
  auto pass_fail = [](bool ok) { return ok ? CheckStatus::Pass : CheckStatus::Fail; };

  const std::uint64_t h = r.h;
  const std::uint64_t k = r.k;
  const auto lo = min_sumset_size(r.h, r.k);
  std::optional<std::uint64_t> hi;
  try {
    hi = max_sumset_size(r.h, r.k);
  } catch (const OverflowError&) {
  }
  const auto smallest = r.sizes.front();
  const auto largest = r.sizes.back();
  const bool sampled = r.source == RangeSource::Sample && !r.complete;

  add("bounds", pass_fail(smallest >= lo && (!hi || largest <= *hi)),
      "sizes within [" + std::to_string(lo) + ", " +
          (hi ? std::to_string(*hi) : std::string("overflow")) + "]");

  if (sampled) {
    add("min-attained", CheckStatus::Skipped, "random sample");
  } else {
    add("min-attained", pass_fail(smallest == lo),
        "min " + std::to_string(smallest) + ", expected hk-h+1 = " +
            std::to_string(lo));
  }

  if (!r.complete) {
    add("max-attained", CheckStatus::Skipped, "result incomplete");
  } else if (!hi) {
    add("max-attained", CheckStatus::Skipped, "upper bound overflows");
  } else {
    add("max-attained", pass_fail(largest == *hi),
        "max " + std::to_string(largest) + ", expected binom(h+k-1,h) = " +
            std::to_string(*hi));
  }

  {
    const auto wlo = h * k - h + 2;
    const auto whi = h * k - 1;
    std::vector<std::uint64_t> inside;
    for (auto s : r.sizes) {
      if (s >= wlo && s <= whi) inside.push_back(s);
    }
    const std::string window =
        "[" + std::to_string(wlo) + ", " + std::to_string(whi) + "]";
    add("gap-empty", pass_fail(inside.empty()),
        inside.empty() ? "no size in " + window
                       : "sizes " + list_sizes(inside) + " inside " + window);
  }

  {
    const bool hk_applies = h == 1 || (h >= 2 && k >= 3);
    const bool domain_has_witness =
        r.complete || !r.search_bound ||
        *r.search_bound >= static_cast<std::int64_t>(k);
    if (!hk_applies) {
      add("hk-present", CheckStatus::Skipped, "needs h >= 2 and k >= 3");
    } else if (sampled || !domain_has_witness) {
      add("hk-present", CheckStatus::Skipped,
          sampled ? "random sample" : "search bound below k");
    } else {
      add("hk-present", pass_fail(r.contains(h * k)),
          "hk = " + std::to_string(h * k));
    }
  }

  if (h >= 3 && k >= 3) {
    const auto v = h * k - h + 2;
    add("hk-h+2-absent", pass_fail(!r.contains(v)),
        "hk-h+2 = " + std::to_string(v));
  } else {
    add("hk-h+2-absent", CheckStatus::Skipped, "needs h >= 3 and k >= 3");
  }
  return report;
}

RangeResult merge(const std::optional<RangeResult>& closed,
                  const std::optional<RangeResult>& searched,
                  std::span<const FamilyMember> constructed) {
  if (!closed && !searched) {
    throw InvalidArgument("merge needs a closed-form or a searched result");
  }
  const RangeResult& first = closed ? *closed : *searched;
  const unsigned h = first.h;
  const std::size_t k = first.k;
  const std::string where = "R(" + std::to_string(h) + "," + std::to_string(k) + ")";
  if (closed && searched && (searched->h != h || searched->k != k)) {
    throw InvalidArgument("merge: inputs disagree on (h, k)");
  }
  for (const auto& m : constructed) {
    if (m.h() != h || m.witness().size() != k) {
      throw InvalidArgument("merge: constructed member " + m.provenance() +
                            " is not for " + where);
    }
  }

  if (closed && searched) {
    if (searched->complete && searched->sizes != closed->sizes) {
      throw InconsistencyError(where + ": complete search {" +
                               list_sizes(searched->sizes) +
                               "} differs from closed form {" +
                               list_sizes(closed->sizes) + "}");
    }
    for (auto s : searched->sizes) {
      if (!closed->contains(s)) {
        throw InconsistencyError(where + ": search found " + std::to_string(s) +
                                 ", absent from the closed form");
      }
    }
  }

  RangeResult out;
  out.h = h;
  out.k = k;
  std::set<std::uint64_t> sizes;
  int contributors = 0;
  for (const auto* in : {closed ? &*closed : nullptr, searched ? &*searched : nullptr}) {
    if (!in) continue;
    ++contributors;
    out.source = in->source;
    out.complete = out.complete || in->complete;
    sizes.insert(in->sizes.begin(), in->sizes.end());
    for (const auto& [size, w] : in->witnesses) {
      keep_smaller_witness(out.witnesses, size, canonical_form(w));
    }
  }
  if (searched) out.search_bound = searched->search_bound;

  if (!constructed.empty()) ++contributors;
  for (const auto& m : constructed) {
    if (out.complete && !sizes.contains(m.size())) {
      throw InconsistencyError(where + ": " + m.provenance() + " gives size " +
                               std::to_string(m.size()) +
                               ", absent from a complete result");
    }
    sizes.insert(m.size());
    keep_smaller_witness(out.witnesses, m.size(), canonical_form(m.witness()));
  }
  if (contributors > 1) out.source = RangeSource::Merged;
  out.sizes.assign(sizes.begin(), sizes.end());
  return out;
}

}  // namespace sumsets
