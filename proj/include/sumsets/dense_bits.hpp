#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sumsets {

/// Closed integer interval [lo, hi].
struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::uint64_t length() const { return static_cast<std::uint64_t>(hi - lo) + 1; }
  friend bool operator==(const Interval&, const Interval&) = default;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// Fixed-size membership bit-vector over [0, size).
class DenseBits {
 public:
  static constexpr std::size_t kWordBits = 64;

  DenseBits() = default;
  explicit DenseBits(std::size_t size)
      : size_(size), words_(word_count(size), 0) {}

  static constexpr std::size_t word_count(std::size_t bits) {
    return (bits + kWordBits - 1) / kWordBits;
  }

  std::size_t size() const noexcept { return size_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  void set(std::size_t i) { words_[i / kWordBits] |= bit(i); }
  bool test(std::size_t i) const {
    return i < size_ && (words_[i / kWordBits] & bit(i)) != 0;
  }
  void set_range(std::size_t lo, std::size_t hi);  // inclusive
  void clear();

  std::uint64_t count() const;

  /// this |= (src << shift), considering only src's first `src_words` words.
  /// Bits pushed past size() must not exist; callers size the vector to the
  /// exact extent of the result.
  void or_shifted(const DenseBits& src, std::size_t shift,
                  std::size_t src_words);

  /// Maximal runs of set bits, in increasing order.
  std::vector<Interval> runs() const;
  static DenseBits from_runs(std::size_t size, std::span<const Interval> runs);

  void swap(DenseBits& other) noexcept {
    std::swap(size_, other.size_);
    words_.swap(other.words_);
  }

  friend bool operator==(const DenseBits&, const DenseBits&) = default;

 private:
  static constexpr std::uint64_t bit(std::size_t i) {
    return std::uint64_t{1} << (i % kWordBits);
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace sumsets
