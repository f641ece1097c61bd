#include "sumsets/constructions.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include "sumsets/errors.hpp"
#include "sumsets/sumset.hpp"

namespace sumsets {

namespace {

using i128 = __int128;

std::uint64_t to_size(i128 v, const char* what) {
  if (v < 0 || v > static_cast<i128>(std::numeric_limits<std::uint64_t>::max())) {
    throw OverflowError(std::string(what) + " out of 64-bit range");
  }
  return static_cast<std::uint64_t>(v);
}

i128 exact_half(i128 v, const char* what) {
  if (v % 2 != 0) {
    throw InconsistencyError(std::string(what) + " is odd; cannot halve");
  }
  return v / 2;
}

std::int64_t floor_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

std::string progression_tag(const ProgressionOfIntervalsSpec& s) {
  return "progression(a=" + std::to_string(s.a) + ",l=" +
         std::to_string(s.ell) + ",b=" + std::to_string(s.b) + ")";
}

std::string two_interval_tag(const TwoIntervalSpec& s) {
  return "two-interval(a=" + std::to_string(s.a) + ",b=" +
         std::to_string(s.b) + ",c=" + std::to_string(s.c) + ")";
}

void keep_smallest(std::map<std::uint64_t, FamilyMember>& by_size,
                   FamilyMember member) {
  auto it = by_size.find(member.size());
  if (it == by_size.end()) {
    by_size.emplace(member.size(), std::move(member));
  } else if (witness_less(member.witness(), it->second.witness())) {
    it->second = std::move(member);
  }
}

std::vector<FamilyMember> flatten(std::map<std::uint64_t, FamilyMember> m) {
  std::vector<FamilyMember> out;
  out.reserve(m.size());
  for (auto& [size, member] : m) out.push_back(std::move(member));
  return out;
}

}  // namespace

void ProgressionOfIntervalsSpec::validate() const {
  if (a < 1) throw InvalidSpec("progression requires a >= 1");
  if (ell < 1) throw InvalidSpec("progression requires l >= 1");
  if (b < 1) throw InvalidSpec("progression requires b >= 1");
  if (a > b) throw InvalidSpec("progression requires a <= b (blocks disjoint)");
}

void TwoIntervalSpec::validate() const {
  if (c < 0) throw InvalidSpec("two-interval requires c >= 0");
  if (c >= a) throw InvalidSpec("two-interval requires c < a");
  if (b <= a) throw InvalidSpec("two-interval requires a < b");
}

IntegerSet build_progression_of_intervals(const ProgressionOfIntervalsSpec& spec) {
  spec.validate();
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(spec.k()));
  for (std::int64_t j = 0; j < spec.ell; ++j) {
    for (std::int64_t t = 0; t < spec.a; ++t) out.push_back(j * spec.b + t);
  }
  return IntegerSet(std::move(out));
}

bool progression_blocks_overlap(const ProgressionOfIntervalsSpec& spec,
                                unsigned h) {
  return static_cast<i128>(spec.b) <= static_cast<i128>(spec.a - 1) * h + 1;
}

std::uint64_t predicted_size_progression(const ProgressionOfIntervalsSpec& spec,
                                         unsigned h) {
  spec.validate();
  if (h == 0) throw InvalidArgument("predicted_size_progression needs h >= 1");
  const i128 a = spec.a, ell = spec.ell, b = spec.b, hh = h;
  if (progression_blocks_overlap(spec, h)) {
    return to_size((a + b * (ell - 1) - 1) * hh + 1, "predicted size");
  }
  return to_size((a - 1) * (ell - 1) * hh * hh + (a + ell - 2) * hh + 1,
                 "predicted size");
}

IntegerSet build_two_interval(const TwoIntervalSpec& spec) {
  spec.validate();
  return IntegerSet::interval(0, spec.a)
      .unite(IntegerSet::interval(spec.b, spec.b + spec.c));
}

TwoIntervalSpec reduce_two_interval(std::int64_t a, std::int64_t b,
                                    std::int64_t c) {
  if (a < 0 || a >= c) throw InvalidSpec("reduction requires 0 <= a < c");
  if (b <= a) throw InvalidSpec("reduction requires a < b");
  TwoIntervalSpec out{c, b + c - a, a};
  out.validate();
  return out;
}

std::int64_t two_interval_i0(const TwoIntervalSpec& spec, unsigned h) {
  spec.validate();
  return floor_div(static_cast<std::int64_t>(h) * spec.a - spec.b,
                   spec.a - spec.c);
}

std::uint64_t predicted_size_two_interval(const TwoIntervalSpec& spec,
                                          unsigned h) {
  spec.validate();
  if (h < 2) throw InvalidArgument("predicted_size_two_interval needs h >= 2");
  const i128 a = spec.a, b = spec.b, c = spec.c, hh = h;
  if (b > hh * a) {
    return to_size(exact_half((hh + 1) * (2 + hh * (a + c)), "(h+1)(2+h(a+c))"),
                   "predicted size");
  }
  // For b <= hc the floor exceeds h-1 and every L_i meets L_{i+1}; the
  // expression is only valid with i0 capped at h-1.
  const i128 i0 = std::min<i128>(two_interval_i0(spec, h), hh - 1);
  const i128 tail =
      exact_half((hh + i0 + 1) * (hh - i0) * (a - c), "(h+i0+1)(h-i0)(a-c)");
  return to_size((i0 + 1) * b + (hh - i0) * (hh * a + 1) - tail,
                 "predicted size");
}

std::vector<Interval> two_interval_blocks(const TwoIntervalSpec& spec,
                                          unsigned h) {
  spec.validate();
  std::vector<Interval> out;
  out.reserve(h + 1);
  const std::int64_t hh = h;
  for (std::int64_t i = 0; i <= hh; ++i) {
    out.push_back({i * spec.b, hh * spec.a + i * (spec.b - spec.a + spec.c)});
  }
  return out;
}

FamilyMember::FamilyMember(unsigned h, std::uint64_t size, IntegerSet witness,
                           std::string provenance)
    : h_(h),
      size_(size),
      witness_(std::move(witness)),
      provenance_(std::move(provenance)) {
  if (witness_.empty()) throw InvalidArgument("family member needs a witness");
  const auto actual = sumset_size(witness_, h_);
  if (actual != size_) {
    throw InconsistencyError(provenance_ + ": predicted |" + std::to_string(h_) +
                             "A| = " + std::to_string(size_) + " but " +
                             to_string(witness_) + " gives " +
                             std::to_string(actual));
  }
}

std::string to_record(const FamilyMember& member) {
  return std::to_string(member.size()) + " " + to_string(member.witness()) +
         " " + member.provenance();
}

std::vector<FamilyMember> members_from_progressions(unsigned h, std::size_t k) {
  if (k == 0) throw InvalidArgument("members_from_progressions needs k >= 1");
  std::map<std::uint64_t, FamilyMember> by_size;
  if (h < 2) return {};
  const auto kk = static_cast<std::int64_t>(k);
  for (std::int64_t a = 1; a <= kk; ++a) {
    if (kk % a != 0) continue;
    const std::int64_t ell = kk / a;
    const std::int64_t overlap_top = (a - 1) * static_cast<std::int64_t>(h) + 1;
    for (std::int64_t b = a; b <= overlap_top + 1; ++b) {
      const ProgressionOfIntervalsSpec spec{a, ell, b};
      keep_smallest(by_size,
                    FamilyMember(h, predicted_size_progression(spec, h),
                                 build_progression_of_intervals(spec),
                                 progression_tag(spec)));
    }
  }
  return flatten(std::move(by_size));
}

std::vector<FamilyMember> members_from_two_intervals(unsigned h, std::size_t k) {
  if (h < 2) throw InvalidArgument("members_from_two_intervals needs h >= 2");
  if (k < 3) throw InvalidArgument("members_from_two_intervals needs k >= 3");
  std::map<std::uint64_t, FamilyMember> by_size;
  const auto a = static_cast<std::int64_t>(k) - 2;
  const auto hh = static_cast<std::int64_t>(h);
  auto add = [&](std::int64_t b) {
    const TwoIntervalSpec spec{a, b, 0};
    keep_smallest(by_size,
                  FamilyMember(h, predicted_size_two_interval(spec, h),
                               build_two_interval(spec), two_interval_tag(spec)));
  };

  add(hh * a + 1);
  for (std::int64_t i0 = 0; i0 <= hh - 2; ++i0) {
    for (std::int64_t r = 0; r <= a - 1; ++r) {
      const std::int64_t b = (hh - i0) * a - r;
      const TwoIntervalSpec spec{a, b, 0};
      if (two_interval_i0(spec, h) != i0) {
        throw InconsistencyError(two_interval_tag(spec) +
                                 ": floor index differs from i0 = " +
                                 std::to_string(i0));
      }
      add(b);
    }
  }
  // [0, k-2] u {k} has |hA| = hk; for k >= 4 the loop above already covers it.
  add(static_cast<std::int64_t>(k));
  return flatten(std::move(by_size));
}

}  // namespace sumsets
