#pragma once

// Slow reference computations that follow the definitions literally. They
// exist to check the fast kernel and the closed-form formulas; nothing hot
// should call them.

#include <cstdint>
#include <span>
#include <vector>

#include "sumsets/integer_set.hpp"
#include "sumsets/sumset.hpp"

namespace sumsets::oracle {

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

/// A weak composition (x_1, ..., x_k) of h: nonnegative parts summing to h.
struct Composition {
  std::vector<unsigned> parts;

  unsigned total() const;
  friend bool operator==(const Composition&, const Composition&) = default;
};

/// Walks X_{h,k} in increasing lexicographic order of (x_k, ..., x_1), i.e.
/// the last coordinate is the outermost loop.
///
///   CompositionStream s(h, k);
///   while (s.next()) use(s.current());
class CompositionStream {
 public:
  /// Throws InvalidArgument for k == 0 and OverflowError when
  /// binom(h+k-1, k-1) exceeds `cap`.
  CompositionStream(unsigned h, std::size_t k,
                    std::uint64_t cap = kDefaultEnumerationCap);

  bool next();
  const Composition& current() const { return current_; }
  std::uint64_t expected_count() const { return expected_; }

 private:
  unsigned h_;
  bool started_ = false;
  bool done_ = false;
  std::uint64_t expected_ = 0;
  Composition current_;
};

std::vector<Composition> enumerate_compositions(
    unsigned h, std::size_t k, std::uint64_t cap = kDefaultEnumerationCap);

/// hA = { x . a : x in X_{h,k} } with `ordered` as the vector a. The order of
/// `ordered` is arbitrary; elements must be nonnegative and distinct.
SumsetValue sumset_by_definition(std::span<const std::int64_t> ordered,
                                 unsigned h,
                                 std::uint64_t cap = kDefaultEnumerationCap);
SumsetValue sumset_by_definition(const IntegerSet& a, unsigned h,
                                 std::uint64_t cap = kDefaultEnumerationCap);

/// { sum_{j=2..k} (j-1) x_j : x in X_{h,k} }.
IntegerSet interval_set_I(unsigned h, std::size_t k,
                          std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace sumsets::oracle
