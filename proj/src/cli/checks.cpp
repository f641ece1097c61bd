#include "sumsets/cli/checks.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "sumsets/constructions.hpp"
#include "sumsets/errors.hpp"
#include "sumsets/oracle.hpp"
#include "sumsets/range.hpp"
#include "sumsets/sumset.hpp"

namespace sumsets::checks {

namespace {

std::string tag(const IntegerSet& a, unsigned h) {
  return "h=" + std::to_string(h) + " A=" + to_string(a);
}

// {0} plus every subset of [1, max_element] with at most max_k - 1 elements
// and gcd 1, i.e. all normalized sets.
void for_each_normalized(std::int64_t max_element, std::size_t max_k,
                         const std::function<void(const IntegerSet&)>& fn) {
  std::vector<std::int64_t> cur{0};
  std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t from,
                                                           std::int64_t g) {
    if (cur.size() == 1 || g == 1) fn(IntegerSet(cur));
    if (cur.size() == max_k) return;
    for (auto x = from; x <= max_element; ++x) {
      cur.push_back(x);
      rec(x + 1, std::gcd(g, x));
      cur.pop_back();
    }
  };
  rec(1, 0);
}

template <class F>
void guarded(Outcome& out, const std::string& where, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    out.fail(where + ": " + e.what());
  }
}

void compare_with_oracle(Outcome& out, std::span<const std::int64_t> ordered,
                         unsigned h, SizeKernel& kernel) {
  IntegerSet a{std::vector<std::int64_t>(ordered.begin(), ordered.end())};
  guarded(out, tag(a, h), [&] {
    const auto fast = hfold_sumset(a, h);
    const auto slow = oracle::sumset_by_definition(ordered, h);
    const auto counted = kernel.size(a.elements(), h);
    out.expect(fast.intervals() == slow.intervals() &&
                   fast.cardinality() == slow.cardinality() &&
                   counted == slow.cardinality(),
               tag(a, h) + ": kernel " + std::to_string(fast.cardinality()) +
                   " / " + std::to_string(counted) + ", oracle " +
                   std::to_string(slow.cardinality()));
  });
}

std::vector<Interval> merged_runs(std::size_t bits, std::vector<Interval> blocks) {
  DenseBits d(bits);
  for (const auto& b : blocks) {
    d.set_range(static_cast<std::size_t>(b.lo), static_cast<std::size_t>(b.hi));
  }
  return d.runs();
}

}  // namespace

void Outcome::fail(std::string what) {
  ++cases;
  if (failures++ == 0) first_failure = std::move(what);
}

Outcome oracle_exhaustive(std::int64_t max_element, std::size_t max_k,
                          unsigned max_h) {
  Outcome out{"oracle-exhaustive", 0, 0, {}};
  SizeKernel kernel;
  for_each_normalized(max_element, max_k, [&](const IntegerSet& a) {
    for (unsigned h = 0; h <= max_h; ++h) compare_with_oracle(out, a.elements(), h, kernel);
  });
  return out;
}

Outcome oracle_random(std::uint64_t trials, std::uint64_t seed, std::size_t max_k,
                      std::int64_t max_element, unsigned max_h) {
  Outcome out{"oracle-random", 0, 0, {}};
  std::mt19937_64 rng(seed);
  SizeKernel kernel;
  std::uniform_int_distribution<std::size_t> pick_k(1, max_k);
  std::uniform_int_distribution<std::int64_t> pick_x(0, max_element);
  std::uniform_int_distribution<unsigned> pick_h(1, max_h);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto k = pick_k(rng);
    std::set<std::int64_t> s;
    while (s.size() < k) s.insert(pick_x(rng));
    std::vector<std::int64_t> ordered(s.begin(), s.end());
    std::shuffle(ordered.begin(), ordered.end(), rng);
    compare_with_oracle(out, ordered, pick_h(rng), kernel);
  }
  return out;
}

Outcome affine_invariance(std::uint64_t trials, std::uint64_t seed) {
  Outcome out{"affine-invariance", 0, 0, {}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_k(1, 7);
  std::uniform_int_distribution<std::int64_t> pick_x(-50, 50);
  std::uniform_int_distribution<std::int64_t> pick_lambda(1, 5);
  std::uniform_int_distribution<std::int64_t> pick_mu(-100, 100);
  std::uniform_int_distribution<unsigned> pick_h(0, 5);
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::set<std::int64_t> s;
    const auto k = pick_k(rng);
    while (s.size() < k) s.insert(pick_x(rng));
    const IntegerSet a(std::vector<std::int64_t>(s.begin(), s.end()));
    auto lambda = pick_lambda(rng);
    if (rng() & 1) lambda = -lambda;
    const AffineMap map{lambda, pick_mu(rng)};
    const auto h = pick_h(rng);
    guarded(out, tag(a, h), [&] {
      const auto b = map.apply(a);
      const auto size = sumset_size(a, h);
      const auto canon = canonical_form(a);
      out.expect(sumset_size(b, h) == size && sumset_size(reflect(a), h) == size &&
                     sumset_size(canon, h) == size,
                 tag(a, h) + ": size changes under " + std::to_string(map.lambda) +
                     "x+" + std::to_string(map.mu));
      out.expect(canonical_form(b) == canon && canonical_form(canon) == canon &&
                     is_canonical(canon) && is_normalized(normalize(b).set),
                 tag(a, h) + ": canonical form not invariant");
    });
  }
  return out;
}

Outcome minimum_characterization(std::int64_t max_element, std::size_t max_k,
                                 unsigned max_h) {
  Outcome out{"minimum-characterization", 0, 0, {}};
  SizeKernel kernel;
  for_each_normalized(max_element, max_k, [&](const IntegerSet& a) {
    for (unsigned h = 2; h <= max_h; ++h) {
      guarded(out, tag(a, h), [&] {
        const auto size = kernel.size(a.elements(), h);
        const auto lo = min_sumset_size(h, a.size());
        const auto hi = max_sumset_size(h, a.size());
        out.expect(lo <= size && size <= hi, tag(a, h) + ": outside elementary bounds");
        out.expect((size == lo) == is_arithmetic_progression(a),
                   tag(a, h) + ": minimum not characterized by progressions");
        out.expect((size == hi) == is_bh_set(a, h), tag(a, h) + ": B_h mismatch");
      });
    }
  });
  return out;
}

Outcome interval_set_grid(unsigned max_h, std::size_t max_k) {
  Outcome out{"interval-set", 0, 0, {}};
  for (unsigned h = 1; h <= max_h; ++h) {
    for (std::size_t k = 1; k <= max_k; ++k) {
      const auto where = "I(" + std::to_string(h) + "," + std::to_string(k) + ")";
      guarded(out, where, [&] {
        const auto got = oracle::interval_set_I(h, k);
        const auto want = IntegerSet::interval(
            0, static_cast<std::int64_t>(k - 1) * static_cast<std::int64_t>(h));
        out.expect(got == want, where + " = " + to_string(got));
      });
    }
  }
  return out;
}

Outcome composition_counts(unsigned max_h, std::size_t max_k) {
  Outcome out{"composition-enumeration", 0, 0, {}};
  for (unsigned h = 0; h <= max_h; ++h) {
    for (std::size_t k = 1; k <= max_k; ++k) {
      const auto where = "X(" + std::to_string(h) + "," + std::to_string(k) + ")";
      guarded(out, where, [&] {
        const auto all = oracle::enumerate_compositions(h, k);
        bool ok = all.size() == binomial(h + k - 1, k - 1);
        for (std::size_t i = 0; ok && i < all.size(); ++i) {
          ok = all[i].parts.size() == k && all[i].total() == h;
          if (ok && i > 0) {
            // strictly increasing in (x_k, ..., x_1)
            ok = std::lexicographical_compare(
                all[i - 1].parts.rbegin(), all[i - 1].parts.rend(),
                all[i].parts.rbegin(), all[i].parts.rend());
          }
        }
        out.expect(ok, where + ": wrong count or order");
      });
    }
  }
  return out;
}

Outcome progression_grid(std::int64_t max_a, std::int64_t max_ell,
                         std::int64_t b_slope, std::int64_t b_offset,
                         unsigned max_h) {
  Outcome out{"progression-grid", 0, 0, {}};
  for (std::int64_t a = 1; a <= max_a; ++a) {
    for (std::int64_t ell = 1; ell <= max_ell; ++ell) {
      for (std::int64_t b = a; b <= (a - 1) * b_slope + b_offset; ++b) {
        const ProgressionOfIntervalsSpec spec{a, ell, b};
        const auto set = build_progression_of_intervals(spec);
        for (unsigned h = 1; h <= max_h; ++h) {
          guarded(out, tag(set, h), [&] {
            const auto value = hfold_sumset(set, h);
            const auto predicted = predicted_size_progression(spec, h);
            out.expect(predicted == value.cardinality(),
                       tag(set, h) + ": predicted " + std::to_string(predicted) +
                           ", kernel " + std::to_string(value.cardinality()));
            // hA = {jb : 0 <= j <= h(ell-1)} + [0, h(a-1)]
            std::vector<Interval> blocks;
            const std::int64_t hh = h;
            for (std::int64_t j = 0; j <= hh * (ell - 1); ++j) {
              blocks.push_back({j * b, j * b + hh * (a - 1)});
            }
            out.expect(merged_runs(value.membership().size(), blocks) ==
                           value.intervals(),
                       tag(set, h) + ": structure differs from Q + [0, h(a-1)]");
          });
        }
      }
    }
  }
  return out;
}

Outcome progression_branch_agreement(std::int64_t max_a, std::int64_t max_ell,
                                     unsigned max_h) {
  Outcome out{"progression-branches", 0, 0, {}};
  for (std::int64_t a = 1; a <= max_a; ++a) {
    for (std::int64_t ell = 1; ell <= max_ell; ++ell) {
      for (std::int64_t h = 1; h <= static_cast<std::int64_t>(max_h); ++h) {
        const auto b = (a - 1) * h + 1;
        // the two expressions, written out independently of the library
        const auto first = (a + b * (ell - 1) - 1) * h + 1;
        const auto second = (a - 1) * (ell - 1) * h * h + (a + ell - 2) * h + 1;
        const auto where = "a=" + std::to_string(a) + " l=" + std::to_string(ell) +
                           " h=" + std::to_string(h);
        out.expect(first == second, where + ": branches differ");
        guarded(out, where, [&] {
          const auto lib = predicted_size_progression({a, ell, b},
                                                      static_cast<unsigned>(h));
          out.expect(lib == static_cast<std::uint64_t>(first),
                     where + ": library value differs at the boundary");
        });
      }
    }
  }
  return out;
}

Outcome two_interval_grid(std::int64_t max_a, std::int64_t max_b, unsigned max_h,
                          std::uint64_t* boundary_rows) {
  Outcome out{"two-interval-grid", 0, 0, {}};
  std::uint64_t boundary = 0;
  for (std::int64_t a = 1; a <= max_a; ++a) {
    for (std::int64_t c = 0; c < a; ++c) {
      for (std::int64_t b = a + 1; b <= max_b; ++b) {
        const TwoIntervalSpec spec{a, b, c};
        const auto set = build_two_interval(spec);
        for (unsigned h = 2; h <= max_h; ++h) {
          const std::int64_t hh = h;
          if (b == hh * a || b == hh * a + 1) ++boundary;
          guarded(out, tag(set, h), [&] {
            const auto value = hfold_sumset(set, h);
            const auto predicted = predicted_size_two_interval(spec, h);
            out.expect(predicted == value.cardinality(),
                       tag(set, h) + ": predicted " + std::to_string(predicted) +
                           ", kernel " + std::to_string(value.cardinality()));
            const auto blocks = two_interval_blocks(spec, h);
            out.expect(merged_runs(value.membership().size(), blocks) ==
                           value.intervals(),
                       tag(set, h) + ": hA is not the union of the blocks");
            bool disjoint = true;
            for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
              disjoint = disjoint && blocks[i].hi < blocks[i + 1].lo;
            }
            out.expect(disjoint == (b > hh * a),
                       tag(set, h) + ": disjointness does not match b > ha");
            out.expect((two_interval_i0(spec, h) < 0) == (b > hh * a),
                       tag(set, h) + ": sign of i0 does not match b > ha");
          });
        }
      }
    }
  }
  if (boundary_rows) *boundary_rows = boundary;
  return out;
}

Outcome reduction_invariance(std::int64_t max_c, std::int64_t max_b,
                             unsigned max_h) {
  Outcome out{"reduction-invariance", 0, 0, {}};
  for (std::int64_t c = 1; c <= max_c; ++c) {
    for (std::int64_t a = 0; a < c; ++a) {
      for (std::int64_t b = a + 1; b <= max_b; ++b) {
        const auto original = IntegerSet::interval(0, a).unite(IntegerSet::interval(b, b + c));
        for (unsigned h = 2; h <= max_h; ++h) {
          guarded(out, tag(original, h), [&] {
            const auto reduced = reduce_two_interval(a, b, c);
            const auto before = sumset_size(original, h);
            const auto after = sumset_size(build_two_interval(reduced), h);
            out.expect(before == after && predicted_size_two_interval(reduced, h) == before,
                       tag(original, h) + ": size changes under reduction");
          });
        }
      }
    }
  }
  return out;
}

Outcome guaranteed_members(unsigned min_h, unsigned max_h) {
  Outcome out{"guaranteed-members", 0, 0, {}};
  for (unsigned h = std::max(min_h, 2u); h <= max_h; ++h) {
    const std::uint64_t hh = h;
    for (std::size_t k = 3; k <= 9; ++k) {
      const auto where = "h=" + std::to_string(h) + " k=" + std::to_string(k);
      guarded(out, where, [&] {
        std::set<std::uint64_t> prog, two;
        for (const auto& m : members_from_progressions(h, k)) {
          out.expect(sumset_size(m.witness(), h) == m.size() && m.witness().size() == k,
                     where + ": " + to_record(m));
          prog.insert(m.size());
        }
        for (const auto& m : members_from_two_intervals(h, k)) {
          out.expect(sumset_size(m.witness(), h) == m.size() && m.witness().size() == k,
                     where + ": " + to_record(m));
          two.insert(m.size());
        }
        const std::uint64_t kk = k;
        if (k <= 8) out.expect(two.contains(hh * kk), where + ": hk missing");
        if (k == 4) {
          out.expect(two.contains((hh + 1) * (hh + 1)), where + ": (h+1)^2 missing");
          out.expect(prog.contains((hh + 1) * (hh + 1)), where + ": square missing");
          for (std::uint64_t b = 3; b <= hh + 2; ++b) {
            out.expect(prog.contains(b * hh + 1), where + ": bh+1 missing for b=" + std::to_string(b));
          }
        }
        if (k == 9) {
          out.expect(prog.contains((2 * hh + 1) * (2 * hh + 1)), where + ": square missing");
        }
        if (k <= 6) {
          const auto top = (hh * hh * (kk - 2) + hh * kk) / 2;
          for (auto s = top - kk + 3; s <= top; ++s) {
            out.expect(two.contains(s), where + ": interval member " + std::to_string(s) + " missing");
          }
        }
      });
    }
  }
  return out;
}

Outcome search_soundness(std::int64_t max_n, std::size_t max_k, unsigned max_h) {
  Outcome out{"search-soundness", 0, 0, {}};
  for (std::size_t k = 1; k <= max_k; ++k) {
    for (auto n = static_cast<std::int64_t>(k) - 1; n <= max_n; ++n) {
      for (unsigned h = 1; h <= max_h; ++h) {
        const auto where = "h=" + std::to_string(h) + " k=" + std::to_string(k) +
                           " N=" + std::to_string(n);
        guarded(out, where, [&] {
          std::set<std::uint64_t> brute;
          SizeKernel kernel;
          for_each_normalized(n, k, [&](const IntegerSet& a) {
            if (a.size() == k) brute.insert(kernel.size(a.elements(), h));
          });
          SearchConfig cfg;
          cfg.h = h;
          cfg.k = k;
          cfg.n = n;
          cfg.stop_when_saturated = false;
          const auto r = search_range(cfg);
          out.expect(std::vector<std::uint64_t>(brute.begin(), brute.end()) == r.sizes,
                     where + ": search and brute force differ");
          validate_result(r);
        });
      }
    }
  }
  return out;
}

Outcome structure_on_complete(unsigned max_h, std::size_t max_k) {
  Outcome out{"structure-on-complete", 0, 0, {}};
  for (unsigned h = 1; h <= max_h; ++h) {
    for (std::size_t k = 1; k <= max_k; ++k) {
      const auto where = "R(" + std::to_string(h) + "," + std::to_string(k) + ")";
      guarded(out, where, [&] {
        auto closed = closed_form_range(h, k);
        if (closed) {
          out.expect(verify_structure(*closed).ok(), where + ": closed form fails checks");
        }
        if (k > 3 && h > 1) return;
        SearchConfig cfg;
        cfg.h = h;
        cfg.k = k;
        cfg.n = completeness_bound(h, k);
        const auto r = search_range(cfg);
        out.expect(r.complete && verify_structure(r).ok(),
                   where + ": complete search fails checks");
        if (closed) out.expect(closed->sizes == r.sizes, where + ": search differs from closed form");
      });
    }
  }
  return out;
}

std::vector<Outcome> run_invariant_suite() {
  std::vector<Outcome> all;
  all.push_back(oracle_exhaustive(16, 5, 5));
  all.push_back(oracle_random(10'000, 1, 8, 5000, 6));
  all.push_back(affine_invariance(2'000, 2));
  all.push_back(minimum_characterization(20, 5, 4));
  all.push_back(interval_set_grid(8, 6));
  all.push_back(composition_counts(8, 6));
  all.push_back(progression_grid(4, 4, 6, 4, 6));
  all.push_back(progression_branch_agreement(6, 6, 8));
  all.push_back(two_interval_grid(5, 33, 6));
  all.push_back(reduction_invariance(5, 33, 6));
  all.push_back(guaranteed_members(2, 8));
  all.push_back(search_soundness(12, 4, 4));
  all.push_back(structure_on_complete(5, 6));
  return all;
}

}  // namespace sumsets::checks
