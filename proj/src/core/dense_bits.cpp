#include "sumsets/dense_bits.hpp"

#include <algorithm>
#include <bit>

namespace sumsets {

void DenseBits::set_range(std::size_t lo, std::size_t hi) {
  if (lo > hi) return;
  const std::size_t lw = lo / kWordBits;
  const std::size_t hw = hi / kWordBits;
  const std::uint64_t lo_mask = ~std::uint64_t{0} << (lo % kWordBits);
  const std::uint64_t hi_mask =
      ~std::uint64_t{0} >> (kWordBits - 1 - hi % kWordBits);
  if (lw == hw) {
    words_[lw] |= lo_mask & hi_mask;
    return;
  }
  words_[lw] |= lo_mask;
  for (std::size_t w = lw + 1; w < hw; ++w) words_[w] = ~std::uint64_t{0};
  words_[hw] |= hi_mask;
}

void DenseBits::clear() { std::fill(words_.begin(), words_.end(), 0); }

std::uint64_t DenseBits::count() const {
  std::uint64_t n = 0;
  for (auto w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

void DenseBits::or_shifted(const DenseBits& src, std::size_t shift,
                           std::size_t src_words) {
  const std::size_t ws = shift / kWordBits;
  const unsigned bs = static_cast<unsigned>(shift % kWordBits);
  const std::size_t n = words_.size();
  src_words = std::min(src_words, src.words_.size());
  if (bs == 0) {
    for (std::size_t j = 0; j < src_words && j + ws < n; ++j) {
      words_[j + ws] |= src.words_[j];
    }
    return;
  }
  for (std::size_t j = 0; j < src_words && j + ws < n; ++j) {
    const std::uint64_t w = src.words_[j];
    words_[j + ws] |= w << bs;
    if (j + ws + 1 < n) words_[j + ws + 1] |= w >> (kWordBits - bs);
  }
}

std::vector<Interval> DenseBits::runs() const {
  std::vector<Interval> out;
  std::size_t i = 0;
  const std::size_t n = words_.size();
  // Walk word-wise: find next set bit, then next clear bit.
  auto next_set = [&](std::size_t from) -> std::size_t {
    std::size_t w = from / kWordBits;
    if (w >= n) return size_;
    std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (from % kWordBits));
    while (cur == 0) {
      if (++w >= n) return size_;
      cur = words_[w];
    }
    return std::min(size_, w * kWordBits + std::countr_zero(cur));
  };
  auto next_clear = [&](std::size_t from) -> std::size_t {
    std::size_t w = from / kWordBits;
    if (w >= n) return size_;
    std::uint64_t cur = ~words_[w] & (~std::uint64_t{0} << (from % kWordBits));
    while (cur == 0) {
      if (++w >= n) return size_;
      cur = ~words_[w];
    }
    return std::min(size_, w * kWordBits + std::countr_zero(cur));
  };
  while (i < size_) {
    const std::size_t lo = next_set(i);
    if (lo >= size_) break;
    const std::size_t hi = next_clear(lo);
    out.push_back({static_cast<std::int64_t>(lo),
                   static_cast<std::int64_t>(hi) - 1});
    i = hi;
  }
  return out;
}

DenseBits DenseBits::from_runs(std::size_t size,
                               std::span<const Interval> runs) {
  DenseBits bits(size);
  for (const auto& r : runs) {
    bits.set_range(static_cast<std::size_t>(r.lo),
                   static_cast<std::size_t>(r.hi));
  }
  return bits;
}

}  // namespace sumsets
