#include "sumsets/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "sumsets/errors.hpp"

namespace sumsets::oracle {

unsigned Composition::total() const {
  return std::accumulate(parts.begin(), parts.end(), 0u);
}

CompositionStream::CompositionStream(unsigned h, std::size_t k,
                                     std::uint64_t cap)
    : h_(h) {
  if (k == 0) throw InvalidArgument("compositions need k >= 1");
  expected_ = binomial(std::uint64_t{h} + k - 1, k - 1);
  if (expected_ > cap) {
    throw OverflowError("X_{" + std::to_string(h) + "," + std::to_string(k) +
                        "} has " + std::to_string(expected_) +
                        " elements, above the enumeration cap " +
                        std::to_string(cap));
  }
  current_.parts.assign(k, 0);
}

bool CompositionStream::next() {
  if (done_) return false;
  auto& x = current_.parts;
  if (!started_) {
    started_ = true;
    x[0] = h_;
    return true;
  }
  // Successor in lexicographic order of (x_k, ..., x_1): move one unit from
  // the lowest nonzero coordinate up by one position, and push the rest of
  // that coordinate back to x_1.
  const auto m = static_cast<std::size_t>(
      std::find_if(x.begin(), x.end(), [](unsigned v) { return v > 0; }) -
      x.begin());
  if (m + 1 >= x.size()) {
    done_ = true;
    return false;
  }
  const unsigned v = x[m];
  x[m] = 0;
  x[m + 1] += 1;
  x[0] = v - 1;
  return true;
}

std::vector<Composition> enumerate_compositions(unsigned h, std::size_t k,
                                                std::uint64_t cap) {
  CompositionStream stream(h, k, cap);
  std::vector<Composition> out;
  out.reserve(stream.expected_count());
  while (stream.next()) out.push_back(stream.current());
  return out;
}

SumsetValue sumset_by_definition(std::span<const std::int64_t> ordered,
                                 unsigned h, std::uint64_t cap) {
  if (ordered.empty()) {
    throw InvalidArgument("sumset_by_definition: set must be nonempty");
  }
  std::int64_t max = 0;
  for (auto a : ordered) {
    if (a < 0) {
      throw InvalidArgument("sumset_by_definition: elements must be nonnegative");
    }
    max = std::max(max, a);
  }
  std::vector<std::int64_t> sorted(ordered.begin(), ordered.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("sumset_by_definition: elements must be distinct");
  }
  std::set<std::int64_t> sums;
  CompositionStream stream(h, ordered.size(), cap);
  while (stream.next()) {
    const auto& x = stream.current().parts;
    std::int64_t dot = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      dot += static_cast<std::int64_t>(x[j]) * ordered[j];
    }
    sums.insert(dot);
  }
  const std::vector<std::int64_t> members(sums.begin(), sums.end());
  return SumsetValue::from_members(h, static_cast<std::int64_t>(h) * max,
                                   members);
}

SumsetValue sumset_by_definition(const IntegerSet& a, unsigned h,
                                 std::uint64_t cap) {
  return sumset_by_definition(a.elements(), h, cap);
}

IntegerSet interval_set_I(unsigned h, std::size_t k, std::uint64_t cap) {
  if (h == 0) throw InvalidArgument("interval_set_I needs h >= 1");
  std::vector<std::int64_t> values;
  CompositionStream stream(h, k, cap);
  while (stream.next()) {
    const auto& x = stream.current().parts;
    std::int64_t s = 0;
    for (std::size_t j = 1; j < x.size(); ++j) {
      s += static_cast<std::int64_t>(j) * x[j];
    }
    values.push_back(s);
  }
  return IntegerSet(std::move(values));
}

}  // namespace sumsets::oracle
