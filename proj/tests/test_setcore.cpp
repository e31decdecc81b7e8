#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "bergepart/constructors.hpp"
#include "bergepart/search.hpp"
#include "bergepart/setcore.hpp"

using namespace bergepart;

namespace {

SubsetMask m(std::initializer_list<int> e) { return SubsetMask::of(e); }

Permutation random_permutation(int n, std::mt19937_64& rng) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST(SubsetMask, BitLayoutIsOneBased) {
  EXPECT_EQ(m({1}).bits, 1U);
  EXPECT_EQ(m({1, 2, 4}).bits, 0b1011U);
  EXPECT_EQ(m({1, 2, 4}).to_string(), "1,2,4");
  EXPECT_EQ(m({4, 2, 1}).elements(), (std::vector<int>{1, 2, 4}));
  EXPECT_TRUE(m({1, 3}).contains(3));
  EXPECT_FALSE(m({1, 3}).contains(2));
  EXPECT_EQ(SubsetMask{}.to_string(), "");
  EXPECT_THROW((void)m({0}), std::out_of_range);
  EXPECT_THROW((void)m({64}), std::out_of_range);
}

TEST(SubsetMask, Operators) {
  EXPECT_EQ(m({1, 2}) | m({2, 3}), m({1, 2, 3}));
  EXPECT_EQ(m({1, 2}) & m({2, 3}), m({2}));
  EXPECT_EQ(m({1, 2}) - m({2, 3}), m({1}));
  EXPECT_TRUE(m({2}).is_subset_of(m({1, 2})));
  EXPECT_FALSE(m({3}).is_subset_of(m({1, 2})));
  EXPECT_EQ(first_element(m({3, 5})), 3);
}

TEST(GroundSet, Limits) {
  EXPECT_THROW(GroundSet(0), GroundTooSmall);
  EXPECT_THROW(GroundSet(64), GroundTooLarge);
  EXPECT_EQ(GroundSet(63).full().bits, ~std::uint64_t{0} >> 1);
  EXPECT_EQ(GroundSet(5).power_set_size(), 32U);
  EXPECT_TRUE(GroundSet(3).contains(m({1, 3})));
  EXPECT_FALSE(GroundSet(3).contains(m({4})));
}

TEST(GroundSet, ComplementSizesAddUp) {
  for (int n = 1; n <= 10; ++n) {
    const GroundSet g(n);
    for (std::uint64_t b = 0; b < g.power_set_size(); ++b) {
      const SubsetMask s{b};
      ASSERT_EQ(s.size() + complement(s, g).size(), n);
      ASSERT_EQ(complement(complement(s, g), g), s);
    }
  }
}

TEST(Family, Names) {
  EXPECT_EQ(family_name(Family::PowerSet), "power_set");
  EXPECT_EQ(family_name(Family::PowerSetStar), "power_set_star");
  EXPECT_EQ(parse_family("star"), Family::PowerSetStar);
  EXPECT_EQ(parse_family("full"), Family::PowerSet);
  EXPECT_EQ(parse_family("power_set_star"), Family::PowerSetStar);
  EXPECT_FALSE(parse_family("bogus").has_value());
}

TEST(Family, EnumerationCounts) {
  for (int n = 1; n <= 12; ++n) {
    const GroundSet g(n);
    const auto full = enumerate_family(g, Family::PowerSet);
    ASSERT_EQ(full.size(), std::size_t{1} << n);
    ASSERT_EQ(std::set<SubsetMask>(full.begin(), full.end()).size(), full.size());
    ASSERT_TRUE(std::is_sorted(full.begin(), full.end()));
    const auto star = enumerate_family(g, Family::PowerSetStar);
    ASSERT_EQ(star.size(), (std::size_t{1} << n) - n - 1);
    for (auto s : star) ASSERT_GE(s.size(), 2);
  }
  EXPECT_THROW((void)enumerate_family(GroundSet(31), Family::PowerSet), GroundTooLarge);
}

TEST(Family, SubsetsOfSize) {
  const GroundSet g(7);
  std::size_t total = 0;
  for (int k = 0; k <= 7; ++k) {
    const auto level = subsets_of_size(g, k);
    for (auto s : level) ASSERT_EQ(s.size(), k);
    ASSERT_TRUE(std::is_sorted(level.begin(), level.end()));
    total += level.size();
  }
  EXPECT_EQ(total, 128U);
  EXPECT_EQ(subsets_of_size(g, 3).size(), 35U);
}

TEST(Family, ClassifySize) {
  const GroundSet six(6);
  EXPECT_EQ(classify_size(m({1, 2}), six), FamilyClass::Small);
  EXPECT_EQ(classify_size(m({1, 2, 3}), six), FamilyClass::Medium);
  EXPECT_EQ(classify_size(m({1, 2, 3, 4}), six), FamilyClass::Large);
  const GroundSet five(5);
  EXPECT_EQ(classify_size(m({1, 2}), five), FamilyClass::Small);
  EXPECT_EQ(classify_size(m({1, 2, 3}), five), FamilyClass::Large);
}

TEST(Validate, QuadPartitionIsValid) {
  for (int n = 3; n <= 16; ++n) {
    const auto p = quad_partition(GroundSet(n));
    ASSERT_TRUE(validate_partition(p).ok()) << "n=" << n;
    ASSERT_EQ(p.set_count(), std::size_t{1} << n);
  }
}

TEST(Validate, ReportsDuplicateMissingForeign) {
  Partition p{GroundSet(3), Family::PowerSetStar, {{m({1, 2}), m({1, 3})}, {m({2, 3}), m({1, 2})}}};
  auto report = validate_partition(p);
  ASSERT_FALSE(report.ok());
  auto has = [&](Violation::Kind k, SubsetMask s) {
    return std::any_of(report.violations.begin(), report.violations.end(),
                       [&](const Violation& v) { return v.kind == k && v.mask == s; });
  };
  EXPECT_TRUE(has(Violation::Kind::Duplicate, m({1, 2})));
  EXPECT_TRUE(has(Violation::Kind::Missing, m({1, 2, 3})));

  p.parts[1] = {m({2, 3}), m({1, 2, 3}), m({1})};
  report = validate_partition(p);
  ASSERT_EQ(report.violations.size(), 1U);
  EXPECT_EQ(report.violations[0].kind, Violation::Kind::Foreign);
  EXPECT_EQ(report.violations[0].part_index, 1);
  EXPECT_EQ(violation_kind_name(Violation::Kind::Foreign), "foreign");
}

TEST(Normalize, SortsPartsAndSets) {
  Partition p{GroundSet(3), Family::PowerSetStar, {{m({2, 3}), m({1, 2, 3})}, {m({1, 3}), m({1, 2})}}};
  const auto q = normalized(p);
  ASSERT_EQ(q.parts.size(), 2U);
  EXPECT_EQ(q.parts[0], (Part{m({1, 2}), m({1, 3})}));
  EXPECT_EQ(q.parts[1], (Part{m({2, 3}), m({1, 2, 3})}));
}

TEST(Permutation, AppliesToMasks) {
  const Permutation swap12{2, 1, 3};
  EXPECT_EQ(apply_permutation(m({1, 3}), swap12), m({2, 3}));
  EXPECT_EQ(apply_permutation(m({3}), Permutation{3, 1, 2}), m({2}));
}

TEST(Canonicalize, InvariantUnderRelabeling) {
  std::mt19937_64 rng(20240601);
  for (int n = 3; n <= 7; ++n) {
    const auto p = quad_partition(GroundSet(n));
    const auto key = canonicalize(p);
    for (int trial = 0; trial < 5; ++trial) {
      auto q = apply_permutation(p, random_permutation(n, rng));
      std::shuffle(q.parts.begin(), q.parts.end(), rng);
      for (auto& part : q.parts) std::shuffle(part.begin(), part.end(), rng);
      ASSERT_EQ(canonicalize(q), key) << "n=" << n;
    }
  }
  const auto five = exceptional_partition_5();
  for (int trial = 0; trial < 10; ++trial) {
    ASSERT_EQ(canonicalize(apply_permutation(five, random_permutation(5, rng))), canonicalize(five));
  }
}

TEST(Canonicalize, SeparatesInequivalentPartitions) {
  const auto quad = quad_partition(GroundSet(4));
  SearchConfig cfg;
  cfg.n = 4;
  cfg.family = Family::PowerSet;
  const auto found = exact_f(cfg);
  ASSERT_TRUE(found.witness.has_value());
  ASSERT_EQ(found.witness->parts.size(), 4U);
  // The search witness piles the empty set and singletons into one class,
  // which no relabeling of the quad partition does.
  EXPECT_NE(canonicalize(quad), canonicalize(*found.witness));

  Partition a{GroundSet(3), Family::PowerSetStar, {{m({1, 2}), m({1, 3})}, {m({2, 3}), m({1, 2, 3})}}};
  Partition b{GroundSet(3), Family::PowerSetStar, {{m({1, 2}), m({1, 2, 3})}, {m({2, 3}), m({1, 3})}}};
  Partition c{GroundSet(3), Family::PowerSetStar, {{m({1, 2}), m({1, 3}), m({2, 3})}, {m({1, 2, 3})}}};
  EXPECT_EQ(canonicalize(a), canonicalize(b));
  EXPECT_NE(canonicalize(a), canonicalize(c));
  EXPECT_THROW((void)canonicalize(quad_partition(GroundSet(9))), GroundTooLarge);
}
