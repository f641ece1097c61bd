#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sumsets/dense_bits.hpp"
#include "sumsets/integer_set.hpp"

namespace sumsets {

/// Default bit-vector capacity (entries) for a single sumset.
inline constexpr std::size_t kDefaultCapacity = std::size_t{1} << 26;

/// binom(n, r), exact. Throws OverflowError instead of wrapping.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r);

/// hk - h + 1, the size of hA when A is a k-term arithmetic progression.
std::uint64_t min_sumset_size(unsigned h, std::size_t k);
/// binom(h+k-1, h), the size of hA when A is a B_h set.
std::uint64_t max_sumset_size(unsigned h, std::size_t k);

/// The h-fold sumset hA of a set with nonnegative elements.
class SumsetValue {
 public:
  SumsetValue() = default;
  SumsetValue(unsigned h, DenseBits membership);

  /// Builds from an explicit list of members, all in [0, extent].
  static SumsetValue from_members(unsigned h, std::int64_t extent,
                                  std::span<const std::int64_t> members);

  unsigned h() const noexcept { return h_; }
  const DenseBits& membership() const noexcept { return membership_; }
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  std::uint64_t cardinality() const noexcept { return cardinality_; }

  bool contains(std::int64_t x) const {
    return x >= 0 && membership_.test(static_cast<std::size_t>(x));
  }
  std::vector<std::int64_t> members() const;

  friend bool operator==(const SumsetValue& a, const SumsetValue& b) {
    return a.h_ == b.h_ && a.membership_ == b.membership_;
  }

 private:
  unsigned h_ = 0;
  DenseBits membership_;
  std::vector<Interval> intervals_;
  std::uint64_t cardinality_ = 0;
};

/// hA by iterated shift-and-or: S_1 = A, S_{i+1} = union over a in A of
/// (S_i shifted by a). 0A = {0}.
///
/// Requires min(A) >= 0. Throws CapacityError when h * max(A) + 1 exceeds
/// `capacity`.
SumsetValue hfold_sumset(const IntegerSet& a, unsigned h,
                         std::size_t capacity = kDefaultCapacity);

/// Computes |hA| only, reusing scratch buffers across calls. Chooses between
/// the shift-and-or kernel and sorting the binom(h+k-1, h) explicit sums,
/// whichever is cheaper for the given shape. One instance per thread.
class SizeKernel {
 public:
  explicit SizeKernel(std::size_t capacity = kDefaultCapacity)
      : capacity_(capacity) {}

  /// `sorted` must be strictly increasing with front() >= 0.
  std::uint64_t size(std::span<const std::int64_t> sorted, unsigned h);

 private:
  std::uint64_t size_by_bits(std::span<const std::int64_t> a, unsigned h,
                             std::uint64_t extent);
  std::uint64_t size_by_sorting(std::span<const std::int64_t> a, unsigned h);

  std::size_t capacity_;
  DenseBits cur_;
  DenseBits next_;
  std::vector<std::int64_t> sums_;
};

/// |hA| for any nonempty set (translated internally).
std::uint64_t sumset_size(const IntegerSet& a, unsigned h);

/// True iff all h-fold sums of A are distinct.
bool is_bh_set(const IntegerSet& a, unsigned h);

}  // namespace sumsets
