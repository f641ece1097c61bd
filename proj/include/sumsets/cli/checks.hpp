#pragma once

// Grid checks of the kernel against the oracle and of the closed-form
// formulas against the kernel. Shared by `sumsets verify` and the tests.

#include <cstdint>
#include <string>
#include <vector>

namespace sumsets::checks {

struct Outcome {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;

  void pass() { ++cases; }
  void fail(std::string what);
  void expect(bool ok, const std::string& what) { ok ? pass() : fail(what); }
  bool ok() const { return failures == 0 && cases > 0; }
};

// Kernel == oracle for every set {0 < a_2 < ... } in [0, max_element] with
// gcd 1 and at most max_k elements, every h in [0, max_h].
Outcome oracle_exhaustive(std::int64_t max_element, std::size_t max_k,
                          unsigned max_h);
// Random sets with up to max_k elements in [0, max_element], fed to the
// oracle in shuffled order.
Outcome oracle_random(std::uint64_t trials, std::uint64_t seed, std::size_t max_k,
                      std::int64_t max_element, unsigned max_h);
// |h(lambda A + mu)| = |hA|, |h(-A)| = |hA|, canonical_form idempotent and
// invariant under the same maps.
Outcome affine_invariance(std::uint64_t trials, std::uint64_t seed);
// elementary bounds, and the lower one attained exactly by progressions (h >= 2)
Outcome minimum_characterization(std::int64_t max_element, std::size_t max_k,
                                 unsigned max_h);
// interval_set_I(h, k) = [0, (k-1)h]
Outcome interval_set_grid(unsigned max_h, std::size_t max_k);
// |X_{h,k}| = binom(h+k-1, k-1), order and uniqueness
Outcome composition_counts(unsigned max_h, std::size_t max_k);
// predicted size and interval structure Q + [0, h(a-1)] for
// a <= max_a, l <= max_ell, b in [a, (a-1)*b_slope + b_offset], h <= max_h
Outcome progression_grid(std::int64_t max_a, std::int64_t max_ell,
                         std::int64_t b_slope, std::int64_t b_offset,
                         unsigned max_h);
// both size branches agree at b = (a-1)h+1
Outcome progression_branch_agreement(std::int64_t max_a, std::int64_t max_ell,
                                     unsigned max_h);
// predicted size = kernel for 0 <= c < a <= max_a, a < b <= max_b, h in
// [2, max_h]; hA is the union of the blocks L_i, which are pairwise disjoint
// iff b > ha. Counts the boundary rows b = ha and b = ha+1 it saw.
Outcome two_interval_grid(std::int64_t max_a, std::int64_t max_b, unsigned max_h,
                          std::uint64_t* boundary_rows = nullptr);
// size unchanged by reduce_two_interval for a < c
Outcome reduction_invariance(std::int64_t max_c, std::int64_t max_b,
                             unsigned max_h);
// Members from both families self-verify, and the guaranteed sizes appear.
Outcome guaranteed_members(unsigned min_h, unsigned max_h);

// search_range against every normalized k-subset of [0, n] (no canonical
// pruning) for n <= max_n, k <= max_k, h in [1, max_h].
Outcome search_soundness(std::int64_t max_n, std::size_t max_k, unsigned max_h);
// verify_structure passes on complete searches for h <= max_h, k <= 3 and on
// the closed forms for k <= max_k.
Outcome structure_on_complete(unsigned max_h, std::size_t max_k);

// The whole suite at the sizes used by `sumsets verify`.
std::vector<Outcome> run_invariant_suite();

}  // namespace sumsets::checks
