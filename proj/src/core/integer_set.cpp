#include "sumsets/integer_set.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include "sumsets/errors.hpp"

namespace sumsets {

namespace {

void require_nonempty(const IntegerSet& a, const char* op) {
  if (a.empty()) {
    throw InvalidArgument(std::string(op) + ": set must be nonempty");
  }
}

std::int64_t checked_affine(std::int64_t lambda, std::int64_t x,
                            std::int64_t mu) {
  std::int64_t prod = 0;
  std::int64_t sum = 0;
  if (__builtin_mul_overflow(lambda, x, &prod) ||
      __builtin_add_overflow(prod, mu, &sum)) {
    throw OverflowError("affine image exceeds 64-bit range");
  }
  return sum;
}

}  // namespace

IntegerSet::IntegerSet(std::initializer_list<value_type> elements)
    : IntegerSet(std::vector<value_type>(elements)) {}

IntegerSet::IntegerSet(std::vector<value_type> elements)
    : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()),
                  elements_.end());
}

IntegerSet IntegerSet::interval(value_type lo, value_type hi) {
  std::vector<value_type> v;
  if (lo <= hi) {
    v.resize(static_cast<std::size_t>(hi - lo) + 1);
    std::iota(v.begin(), v.end(), lo);
  }
  IntegerSet s;
  s.elements_ = std::move(v);
  return s;
}

IntegerSet::value_type IntegerSet::min() const {
  require_nonempty(*this, "min");
  return elements_.front();
}

IntegerSet::value_type IntegerSet::max() const {
  require_nonempty(*this, "max");
  return elements_.back();
}

bool IntegerSet::contains(value_type x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

std::vector<IntegerSet::value_type> IntegerSet::gaps() const {
  std::vector<value_type> g;
  if (elements_.size() > 1) {
    g.reserve(elements_.size() - 1);
    for (std::size_t i = 1; i < elements_.size(); ++i) {
      g.push_back(elements_[i] - elements_[i - 1]);
    }
  }
  return g;
}

IntegerSet IntegerSet::unite(const IntegerSet& other) const {
  std::vector<value_type> merged;
  merged.reserve(size() + other.size());
  std::set_union(begin(), end(), other.begin(), other.end(),
                 std::back_inserter(merged));
  IntegerSet s;
  s.elements_ = std::move(merged);
  return s;
}

IntegerSet AffineMap::apply(const IntegerSet& a) const {
  if (lambda == 0) {
    throw InvalidArgument("affine map requires lambda != 0");
  }
  std::vector<std::int64_t> out;
  out.reserve(a.size());
  for (auto x : a) {
    out.push_back(checked_affine(lambda, x, mu));
  }
  return IntegerSet(std::move(out));
}

Normalized normalize(const IntegerSet& a) {
  require_nonempty(a, "normalize");
  const auto lo = a.min();
  std::int64_t g = 0;
  for (auto x : a) {
    std::int64_t d = 0;
    if (__builtin_sub_overflow(x, lo, &d)) {
      throw OverflowError("normalize: diameter exceeds 64-bit range");
    }
    g = std::gcd(g, d);
  }
  if (g == 0) {
    // singleton
    return {IntegerSet{0}, AffineMap{1, lo}};
  }
  std::vector<std::int64_t> out;
  out.reserve(a.size());
  for (auto x : a) {
    out.push_back((x - lo) / g);
  }
  return {IntegerSet(std::move(out)), AffineMap{g, lo}};
}

bool is_normalized(const IntegerSet& a) {
  if (a.empty() || a.min() != 0) return false;
  std::int64_t g = 0;
  for (auto x : a) g = std::gcd(g, x);
  return a.size() == 1 || g == 1;
}

IntegerSet reflect(const IntegerSet& a) {
  return AffineMap{-1, 0}.apply(a);
}

IntegerSet canonical_form(const IntegerSet& a) {
  auto forward = normalize(a).set;
  auto backward = normalize(reflect(forward)).set;
  // Lexicographic order on gap sequences coincides with lexicographic order
  // on elements once both start at 0.
  return backward < forward ? backward : forward;
}

bool is_canonical(const IntegerSet& a) {
  return is_normalized(a) && canonical_form(a) == a;
}

bool is_arithmetic_progression(const IntegerSet& a) {
  require_nonempty(a, "is_arithmetic_progression");
  const auto g = a.gaps();
  return std::adjacent_find(g.begin(), g.end(), std::not_equal_to<>()) ==
         g.end();
}

bool witness_less(const IntegerSet& a, const IntegerSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.empty()) return false;
  if (a.max() != b.max()) return a.max() < b.max();
  return a < b;
}

IntegerSet parse_integer_set(std::string_view text) {
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("cannot parse set literal '" + std::string(text) +
                      "': " + why);
  };
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
  };
  skip_ws();
  if (i >= text.size() || text[i] != '{') throw fail("expected '{'");
  ++i;
  std::vector<std::int64_t> values;
  skip_ws();
  if (i < text.size() && text[i] == '}') {
    ++i;
  } else {
    for (;;) {
      skip_ws();
      std::size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
      std::string_view token = text.substr(start, i - start);
      if (!token.empty() && token.front() == '+') token.remove_prefix(1);
      std::int64_t value = 0;
      auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), value);
      if (token.empty() || ec != std::errc() ||
          ptr != token.data() + token.size()) {
        throw fail(ec == std::errc::result_out_of_range
                       ? "integer out of range"
                       : "expected an integer");
      }
      values.push_back(value);
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == '}') {
        ++i;
        break;
      }
      throw fail("expected ',' or '}'");
    }
  }
  skip_ws();
  if (i != text.size()) throw fail("trailing characters");
  return IntegerSet(std::move(values));
}

std::string to_string(const IntegerSet& a) {
  std::string out = "{";
  bool first = true;
  for (auto x : a) {
    if (!first) out += ',';
    out += std::to_string(x);
    first = false;
  }
  out += '}';
  return out;
}

}  // namespace sumsets
