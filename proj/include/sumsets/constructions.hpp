#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sumsets/dense_bits.hpp"
#include "sumsets/integer_set.hpp"

namespace sumsets {

/// An ell-term arithmetic progression (difference b) of translates of the
/// block [0, a-1]. Requires 1 <= a <= b and ell >= 1; the set has a*ell
/// elements.
struct ProgressionOfIntervalsSpec {
  std::int64_t a = 1;
  std::int64_t ell = 1;
  std::int64_t b = 1;

  std::int64_t k() const { return a * ell; }
  void validate() const;  // throws InvalidSpec
  friend bool operator==(const ProgressionOfIntervalsSpec&,
                         const ProgressionOfIntervalsSpec&) = default;
};

/// [0, a] u [b, b+c] with 0 <= c < a < b; a + c + 2 elements.
struct TwoIntervalSpec {
  std::int64_t a = 1;
  std::int64_t b = 2;
  std::int64_t c = 0;

  std::int64_t k() const { return a + c + 2; }
  void validate() const;  // throws InvalidSpec
  friend bool operator==(const TwoIntervalSpec&,
                         const TwoIntervalSpec&) = default;
};

IntegerSet build_progression_of_intervals(const ProgressionOfIntervalsSpec& spec);

/// Closed-form |hA| for the progression-of-intervals set.
///   a <= b <= (a-1)h+1 :  (a + b(ell-1) - 1)h + 1
///   b >= (a-1)h + 1    :  (a-1)(ell-1)h^2 + (a+ell-2)h + 1
/// The branches agree at b = (a-1)h+1; the first one is used there.
std::uint64_t predicted_size_progression(const ProgressionOfIntervalsSpec& spec,
                                         unsigned h);

/// Which branch of predicted_size_progression applies.
bool progression_blocks_overlap(const ProgressionOfIntervalsSpec& spec,
                                unsigned h);

IntegerSet build_two_interval(const TwoIntervalSpec& spec);

/// Mirror image of [0, a] u [b, b+c] when a < c: (c, b+c-a, a).
/// Requires 0 <= a < c and a < b.
TwoIntervalSpec reduce_two_interval(std::int64_t a, std::int64_t b,
                                    std::int64_t c);

/// floor((ha - b) / (a - c)); negative exactly when b > ha.
std::int64_t two_interval_i0(const TwoIntervalSpec& spec, unsigned h);

/// Closed-form |hA| for [0, a] u [b, b+c], h >= 2.
///   b > ha      : (h+1)(2 + h(a+c)) / 2
///   a < b <= ha : (i0+1)b + (h-i0)(ha+1) - (h+i0+1)(h-i0)(a-c)/2
/// with i0 = min(two_interval_i0, h-1); when b <= hc the floor is h or more
/// and hA is the whole interval [0, h(b+c)].
/// Every halving is checked for exactness; a remainder throws
/// InconsistencyError.
std::uint64_t predicted_size_two_interval(const TwoIntervalSpec& spec,
                                          unsigned h);

/// The intervals L_i = [ib, ha + i(b-a+c)], i = 0..h, whose union is hA.
std::vector<Interval> two_interval_blocks(const TwoIntervalSpec& spec,
                                          unsigned h);

/// A member of R(h, k) produced by one of the families, with its witness.
/// Construction re-derives |h * witness| with the kernel and throws
/// InconsistencyError when it differs from `size`.
class FamilyMember {
 public:
  FamilyMember(unsigned h, std::uint64_t size, IntegerSet witness,
               std::string provenance);

  unsigned h() const { return h_; }
  std::uint64_t size() const { return size_; }
  const IntegerSet& witness() const { return witness_; }
  const std::string& provenance() const { return provenance_; }

 private:
  unsigned h_;
  std::uint64_t size_;
  IntegerSet witness_;
  std::string provenance_;
};

/// One line: `<size> <witness> <provenance>`.
std::string to_record(const FamilyMember& member);

/// Members from every factorization k = a*ell: the overlapping branch for
/// b in [a, (a-1)h+1] and the disjoint branch at b = (a-1)h+2. One member
/// per size (smallest witness). Empty for h < 2.
std::vector<FamilyMember> members_from_progressions(unsigned h, std::size_t k);

/// Members from [0, k-2] u {b}: the disjoint case b = h(k-2)+1 and every
/// b = (h-i0)(k-2) - r with i0 in [0, h-2], r in [0, k-3]. One member per
/// size (smallest witness). Requires h >= 2 and k >= 3.
std::vector<FamilyMember> members_from_two_intervals(unsigned h, std::size_t k);

}  // namespace sumsets
