#include "sumsets/sumset.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

#include "sumsets/errors.hpp"

namespace sumsets {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError(std::string(what) + " exceeds 64-bit range");
  }
  return r;
}

// Appends every sum of `remaining` elements of a[start..] (with repetition).
void collect_sums(std::span<const std::int64_t> a, std::size_t start,
                  unsigned remaining, std::int64_t acc,
                  std::vector<std::int64_t>& out) {
  if (remaining == 0) {
    out.push_back(acc);
    return;
  }
  for (std::size_t i = start; i < a.size(); ++i) {
    collect_sums(a, i, remaining - 1, acc + a[i], out);
  }
}

constexpr std::uint64_t kMaxExplicitSums = std::uint64_t{1} << 26;

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    result = result * (n - r + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      throw OverflowError("binom(" + std::to_string(n) + ", " +
                          std::to_string(r) + ") exceeds 64-bit range");
    }
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t min_sumset_size(unsigned h, std::size_t k) {
  if (k == 0) throw InvalidArgument("k must be positive");
  return checked_mul(h, k - 1, "h(k-1)") + 1;
}

std::uint64_t max_sumset_size(unsigned h, std::size_t k) {
  if (k == 0) throw InvalidArgument("k must be positive");
  return binomial(std::uint64_t{h} + k - 1, h);
}

SumsetValue::SumsetValue(unsigned h, DenseBits membership)
    : h_(h),
      membership_(std::move(membership)),
      intervals_(membership_.runs()),
      cardinality_(membership_.count()) {}

SumsetValue SumsetValue::from_members(unsigned h, std::int64_t extent,
                                      std::span<const std::int64_t> members) {
  if (extent < 0) throw InvalidArgument("sumset extent must be nonnegative");
  DenseBits bits(static_cast<std::size_t>(extent) + 1);
  for (auto x : members) {
    if (x < 0 || x > extent) {
      throw InvalidArgument("sumset member " + std::to_string(x) +
                            " outside [0, " + std::to_string(extent) + "]");
    }
    bits.set(static_cast<std::size_t>(x));
  }
  return SumsetValue(h, std::move(bits));
}

std::vector<std::int64_t> SumsetValue::members() const {
  std::vector<std::int64_t> out;
  out.reserve(cardinality_);
  for (const auto& iv : intervals_) {
    for (auto x = iv.lo; x <= iv.hi; ++x) out.push_back(x);
  }
  return out;
}

SumsetValue hfold_sumset(const IntegerSet& a, unsigned h,
                         std::size_t capacity) {
  if (a.empty()) throw InvalidArgument("hfold_sumset: set must be nonempty");
  if (a.min() < 0) {
    throw InvalidArgument("hfold_sumset: elements must be nonnegative");
  }
  const auto max = static_cast<std::uint64_t>(a.max());
  const std::uint64_t extent = checked_mul(h, max, "h*max(A)");
  if (extent >= capacity) {
    throw CapacityError("sumset extent " + std::to_string(extent + 1) +
                        " exceeds bit-vector capacity " +
                        std::to_string(capacity));
  }
  const auto bits = static_cast<std::size_t>(extent) + 1;
  DenseBits cur(bits);
  if (h == 0) {
    cur.set(0);
    return SumsetValue(0, std::move(cur));
  }
  for (auto x : a) cur.set(static_cast<std::size_t>(x));
  DenseBits next(bits);
  for (unsigned i = 1; i < h; ++i) {
    next.clear();
    const auto src_words = DenseBits::word_count(i * max + 1);
    for (auto x : a) {
      next.or_shifted(cur, static_cast<std::size_t>(x), src_words);
    }
    cur.swap(next);
  }
  return SumsetValue(h, std::move(cur));
}

std::uint64_t SizeKernel::size(std::span<const std::int64_t> a, unsigned h) {
  const std::size_t k = a.size();
  if (k == 0) throw InvalidArgument("SizeKernel: set must be nonempty");
  if (a.front() < 0) {
    throw InvalidArgument("SizeKernel: elements must be nonnegative");
  }
  if (h == 0 || k == 1) return 1;
  if (h == 1) return k;

  const auto max = static_cast<std::uint64_t>(a.back());
  const std::uint64_t extent = checked_mul(h, max, "h*max(A)");
  const bool bits_ok = extent < capacity_;

  std::uint64_t sums = std::numeric_limits<std::uint64_t>::max();
  try {
    sums = binomial(std::uint64_t{h} + k - 1, h);
  } catch (const OverflowError&) {
  }
  const bool sort_ok = sums <= kMaxExplicitSums;
  if (!bits_ok && !sort_ok) {
    throw CapacityError("sumset extent " + std::to_string(extent + 1) +
                        " exceeds bit-vector capacity " +
                        std::to_string(capacity_));
  }
  if (!sort_ok) return size_by_bits(a, h, extent);
  if (!bits_ok) return size_by_sorting(a, h);

  // Rough operation counts for each strategy.
  const double word_ops =
      static_cast<double>(h) * k * (static_cast<double>(extent) / 128.0 + 1.0);
  const double sort_ops =
      static_cast<double>(sums) * (std::bit_width(sums) + 2.0);
  return word_ops <= sort_ops ? size_by_bits(a, h, extent)
                              : size_by_sorting(a, h);
}

std::uint64_t SizeKernel::size_by_bits(std::span<const std::int64_t> a,
                                       unsigned h, std::uint64_t extent) {
  const auto bits = static_cast<std::size_t>(extent) + 1;
  if (cur_.size() != bits) {
    cur_ = DenseBits(bits);
    next_ = DenseBits(bits);
  } else {
    cur_.clear();
  }
  const auto max = static_cast<std::uint64_t>(a.back());
  for (auto x : a) cur_.set(static_cast<std::size_t>(x));
  for (unsigned i = 1; i < h; ++i) {
    next_.clear();
    const auto src_words = DenseBits::word_count(i * max + 1);
    for (auto x : a) {
      next_.or_shifted(cur_, static_cast<std::size_t>(x), src_words);
    }
    cur_.swap(next_);
  }
  return cur_.count();
}

std::uint64_t SizeKernel::size_by_sorting(std::span<const std::int64_t> a,
                                          unsigned h) {
  sums_.clear();
  collect_sums(a, 0, h, 0, sums_);
  std::sort(sums_.begin(), sums_.end());
  return static_cast<std::uint64_t>(
      std::unique(sums_.begin(), sums_.end()) - sums_.begin());
}

std::uint64_t sumset_size(const IntegerSet& a, unsigned h) {
  if (a.empty()) throw InvalidArgument("sumset_size: set must be nonempty");
  SizeKernel kernel;
  if (a.min() >= 0) return kernel.size(a.elements(), h);
  std::vector<std::int64_t> shifted;
  shifted.reserve(a.size());
  for (auto x : a) {
    std::int64_t d = 0;
    if (__builtin_sub_overflow(x, a.min(), &d)) {
      throw OverflowError("sumset_size: diameter exceeds 64-bit range");
    }
    shifted.push_back(d);
  }
  return kernel.size(shifted, h);
}

bool is_bh_set(const IntegerSet& a, unsigned h) {
  if (a.empty()) throw InvalidArgument("is_bh_set: set must be nonempty");
  return sumset_size(a, h) == max_sumset_size(h, a.size());
}

}  // namespace sumsets
