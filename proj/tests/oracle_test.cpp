#include <gtest/gtest.h>

#include "sumsets/cli/checks.hpp"
#include "sumsets/errors.hpp"
#include "sumsets/oracle.hpp"

using namespace sumsets;
using oracle::Composition;

TEST(Compositions, TwoIntoTwo) {
  const auto all = oracle::enumerate_compositions(2, 2);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0].parts, (std::vector<unsigned>{2, 0}));
  EXPECT_EQ(all[1].parts, (std::vector<unsigned>{1, 1}));
  EXPECT_EQ(all[2].parts, (std::vector<unsigned>{0, 2}));
}

TEST(Compositions, Counts) {
  EXPECT_EQ(oracle::enumerate_compositions(3, 3).size(), 10u);
  const auto zero = oracle::enumerate_compositions(0, 4);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0].parts, (std::vector<unsigned>(4, 0)));
  EXPECT_EQ(oracle::enumerate_compositions(5, 1).size(), 1u);
}

TEST(Compositions, StreamMatchesVector) {
  oracle::CompositionStream s(4, 3);
  std::vector<Composition> seen;
  while (s.next()) seen.push_back(s.current());
  EXPECT_EQ(seen, oracle::enumerate_compositions(4, 3));
  EXPECT_EQ(s.expected_count(), 15u);
  EXPECT_FALSE(s.next());
}

TEST(Compositions, CountsOrderAndUniquenessOnGrid) {
  const auto o = checks::composition_counts(8, 6);
  EXPECT_TRUE(o.ok()) << o.first_failure;
}

TEST(Compositions, CapAndArguments) {
  EXPECT_THROW(oracle::CompositionStream(2, 0), InvalidArgument);
  EXPECT_THROW(oracle::CompositionStream(10, 10, 1000), OverflowError);
  EXPECT_NO_THROW(oracle::CompositionStream(3, 3, 10));
}

TEST(SumsetByDefinition, Examples) {
  EXPECT_EQ(oracle::sumset_by_definition(IntegerSet{0, 1, 3}, 3).cardinality(), 9u);
  const auto v = oracle::sumset_by_definition(IntegerSet{0, 5}, 4);
  EXPECT_EQ(v.members(), (std::vector<std::int64_t>{0, 5, 10, 15, 20}));
  EXPECT_EQ(oracle::sumset_by_definition(IntegerSet{2, 9}, 0).members(),
            (std::vector<std::int64_t>{0}));
}

TEST(SumsetByDefinition, OrderOfElementsIrrelevant) {
  const std::vector<std::int64_t> a{7, 0, 3, 12}, b{0, 3, 7, 12};
  EXPECT_EQ(oracle::sumset_by_definition(a, 3), oracle::sumset_by_definition(b, 3));
}

TEST(SumsetByDefinition, RejectsBadInput) {
  const std::vector<std::int64_t> dup{0, 1, 1}, neg{-1, 2};
  EXPECT_THROW(oracle::sumset_by_definition(dup, 2), InvalidArgument);
  EXPECT_THROW(oracle::sumset_by_definition(neg, 2), InvalidArgument);
}

TEST(IntervalSetI, Examples) {
  for (unsigned h = 1; h <= 5; ++h) {
    EXPECT_EQ(oracle::interval_set_I(h, 1), IntegerSet{0});
    EXPECT_EQ(oracle::interval_set_I(h, 2), IntegerSet::interval(0, h));
  }
  EXPECT_EQ(oracle::interval_set_I(3, 4), IntegerSet::interval(0, 9));
}

TEST(IntervalSetI, WholeGrid) {
  const auto o = checks::interval_set_grid(8, 6);
  EXPECT_TRUE(o.ok()) << o.first_failure;
  EXPECT_EQ(o.cases, 48u);
}

TEST(KernelVersusOracle, ExhaustiveSmallSets) {
  const auto o = checks::oracle_exhaustive(12, 5, 5);
  EXPECT_TRUE(o.ok()) << o.first_failure;
}

TEST(KernelVersusOracle, RandomSets) {
  const auto o = checks::oracle_random(1000, 42, 8, 3000, 6);
  EXPECT_TRUE(o.ok()) << o.first_failure;
  EXPECT_EQ(o.cases, 1000u);
}

TEST(KernelVersusOracle, AffineInvariance) {
  const auto o = checks::affine_invariance(1000, 9);
  EXPECT_TRUE(o.ok()) << o.first_failure;
}

TEST(KernelVersusOracle, MinimumAttainedOnlyByProgressions) {
  const auto o = checks::minimum_characterization(16, 5, 4);
  EXPECT_TRUE(o.ok()) << o.first_failure;
}
