#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sumsets {

/// A finite set of integers, kept sorted and free of duplicates.
///
/// The empty set is representable (so that parsing and building can report
/// errors uniformly) but every operation in this library requires at least
/// one element.
class IntegerSet {
 public:
  using value_type = std::int64_t;
  using const_iterator = std::vector<value_type>::const_iterator;

  IntegerSet() = default;
  IntegerSet(std::initializer_list<value_type> elements);
  explicit IntegerSet(std::vector<value_type> elements);

  /// The integer interval [lo, hi]; empty when lo > hi.
  static IntegerSet interval(value_type lo, value_type hi);

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  value_type min() const;
  value_type max() const;
  value_type operator[](std::size_t i) const { return elements_[i]; }
  bool contains(value_type x) const;

  std::span<const value_type> elements() const noexcept { return elements_; }
  const_iterator begin() const noexcept { return elements_.begin(); }
  const_iterator end() const noexcept { return elements_.end(); }

  /// Differences between consecutive elements.
  std::vector<value_type> gaps() const;

  /// Union with another set.
  IntegerSet unite(const IntegerSet& other) const;

  friend bool operator==(const IntegerSet&, const IntegerSet&) = default;
  friend auto operator<=>(const IntegerSet& a, const IntegerSet& b) {
    return a.elements_ <=> b.elements_;
  }

 private:
  std::vector<value_type> elements_;
};

/// B = lambda * A + mu.
struct AffineMap {
  std::int64_t lambda = 1;
  std::int64_t mu = 0;

  static AffineMap identity() { return {}; }
  bool is_identity() const { return lambda == 1 && mu == 0; }
  IntegerSet apply(const IntegerSet& a) const;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

struct Normalized {
  IntegerSet set;
  AffineMap map;  // original = map.apply(set)
};

/// Translate to min 0 and divide by the gcd of the elements.
/// A singleton normalizes to {0}.
Normalized normalize(const IntegerSet& a);
bool is_normalized(const IntegerSet& a);

/// (-1) * A.
IntegerSet reflect(const IntegerSet& a);

/// Representative of the affine class: of normalize(A) and
/// normalize(reflect(A)), the one with the lexicographically smaller gap
/// sequence.
IntegerSet canonical_form(const IntegerSet& a);
bool is_canonical(const IntegerSet& a);

bool is_arithmetic_progression(const IntegerSet& a);

/// Strict weak order used whenever one witness must be picked among several:
/// smaller cardinality, then smaller maximum, then lexicographic.
bool witness_less(const IntegerSet& a, const IntegerSet& b);

/// Parses `{n1,n2,...}`; whitespace is allowed anywhere, negatives too.
IntegerSet parse_integer_set(std::string_view text);
std::string to_string(const IntegerSet& a);

}  // namespace sumsets
