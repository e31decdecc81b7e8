#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "bergepart/berge.hpp"
#include "bergepart/constructors.hpp"

using namespace bergepart;

namespace {

SubsetMask m(std::initializer_list<int> e) { return SubsetMask::of(e); }

std::vector<SubsetMask> sets_of_size_at_least(int n, int lo) {
  std::vector<SubsetMask> out;
  for (auto s : enumerate_family(GroundSet(n), Family::PowerSet)) {
    if (s.size() >= lo) out.push_back(s);
  }
  return out;
}

SubsetMask relabel(SubsetMask s, const std::vector<int>& perm) { return apply_permutation(s, perm); }

bool stem_condition(const std::array<SubsetMask, 4>& q, int i) {
  SubsetMask meet;
  for (int j = 0; j < 4; ++j) {
    if (j != i) meet = meet | (q[i] & q[j]);
  }
  return meet.size() <= 1;
}

}  // namespace

TEST(Pattern, NamedConstructors) {
  EXPECT_EQ(PatternGraph::cycle(3).edge_count(), 3);
  EXPECT_EQ(PatternGraph::cycle(5).vertex_count(), 5);
  EXPECT_EQ(PatternGraph::path(3).edge_count(), 3);
  EXPECT_EQ(PatternGraph::path(3).vertex_count(), 4);
  EXPECT_EQ(PatternGraph::star(3).edge_count(), 3);
  EXPECT_EQ(PatternGraph::star(3).vertex_count(), 4);
  EXPECT_THROW((void)PatternGraph::cycle(2), InvalidPattern);
  EXPECT_THROW(PatternGraph(3, {{0, 0}}), InvalidPattern);
  EXPECT_THROW(PatternGraph(3, {{0, 1}, {1, 0}}), InvalidPattern);
  EXPECT_THROW(PatternGraph(3, {{0, 1}}), InvalidPattern);
  EXPECT_FALSE(PatternGraph(4, {{0, 1}, {2, 3}}).connected());
  EXPECT_TRUE(PatternGraph::star(4).connected());
}

TEST(Pattern, ParseAndName) {
  EXPECT_EQ(PatternGraph::parse("c3").kind(), PatternGraph::Kind::Cycle);
  EXPECT_EQ(PatternGraph::parse("cK:5").edge_count(), 5);
  EXPECT_EQ(PatternGraph::parse("s3").kind(), PatternGraph::Kind::Star);
  EXPECT_EQ(PatternGraph::parse("p4").edge_count(), 4);
  const auto g = PatternGraph::parse("edges:1-2,2-3,3-1,3-4");
  EXPECT_EQ(g.vertex_count(), 4);
  EXPECT_EQ(g.edge_count(), 4);
  for (const char* text : {"c3", "c4", "c6", "p2", "s4", "edges:1-2,2-3,3-1,3-4"}) {
    const auto h = PatternGraph::parse(text);
    EXPECT_EQ(PatternGraph::parse(h.name()).edges(), h.edges()) << text;
  }
  EXPECT_THROW((void)PatternGraph::parse("q7"), InvalidPattern);
  EXPECT_THROW((void)PatternGraph::parse("edges:1-1"), InvalidPattern);
  EXPECT_THROW((void)PatternGraph::parse("c"), InvalidPattern);
}

TEST(Sdr, Basic) {
  const std::vector<SubsetMask> ok{m({1, 2}), m({1}), m({2, 3})};
  const auto reps = distinct_representatives(ok);
  ASSERT_TRUE(reps.has_value());
  EXPECT_EQ((*reps)[1], 1);
  EXPECT_EQ((*reps)[0], 2);
  EXPECT_EQ((*reps)[2], 3);
  const std::vector<SubsetMask> bad{m({1, 2}), m({1, 2}), m({1, 2})};
  EXPECT_FALSE(distinct_representatives(bad).has_value());
}

TEST(Triangle, Examples) {
  EXPECT_FALSE(has_berge_triangle(m({1, 2}), m({1, 2, 3}), m({1, 2, 4})));
  EXPECT_TRUE(has_berge_triangle(m({1, 2}), m({2, 3}), m({1, 3})));
  EXPECT_TRUE(has_berge_triangle(m({1, 2, 3}), m({2, 3, 4}), m({1, 3, 4})));
  EXPECT_FALSE(has_berge_triangle(m({1, 2, 3, 4}), m({1, 2, 5, 6}), m({1, 2, 7, 8})));

  const std::vector<SubsetMask> fam{m({1, 2}), m({2, 3}), m({1, 3})};
  const auto emb = find_berge_embedding(fam, PatternGraph::cycle(3));
  ASSERT_TRUE(emb.has_value());
  auto verts = emb->vertex_map;
  std::sort(verts.begin(), verts.end());
  EXPECT_EQ(verts, (std::vector<int>{1, 2, 3}));
  EXPECT_FALSE(find_berge_embedding(std::vector{m({1, 2}), m({1, 2, 3}), m({1, 2, 4})}, PatternGraph::cycle(3)));
}

TEST(Cycle4, Examples) {
  EXPECT_FALSE(has_berge_cycle4(m({1, 2, 3}), m({1, 2, 4}), m({1, 2, 5}), m({1, 2, 6})));
  const auto emb = has_berge_cycle4(m({1, 2}), m({2, 3}), m({3, 4}), m({1, 4}));
  ASSERT_TRUE(emb.has_value());
  const std::vector<SubsetMask> fam{m({1, 2}), m({2, 3}), m({3, 4}), m({1, 4})};
  EXPECT_TRUE(check_embedding(fam, PatternGraph::cycle(4), *emb));
  // Needs the crossing order (1,3,2,4).
  const std::vector<SubsetMask> crossed{m({1, 2}), m({3, 4}), m({2, 3}), m({1, 4})};
  const auto c = detect(crossed, PatternGraph::cycle(4));
  ASSERT_TRUE(c.has_value());
  EXPECT_TRUE(check_embedding(crossed, PatternGraph::cycle(4), *c));
}

TEST(Star, Examples) {
  EXPECT_FALSE(has_berge_star(std::vector{m({1, 2, 3}), m({1, 2}), m({1, 3})}, 3));
  const std::vector<SubsetMask> claw{m({1, 2}), m({1, 3}), m({1, 4})};
  const auto emb = has_berge_star(claw, 3);
  ASSERT_TRUE(emb.has_value());
  EXPECT_EQ(emb->vertex_map[0], 1);
  EXPECT_TRUE(check_embedding(claw, PatternGraph::star(3), *emb));
  const std::vector<SubsetMask> wide{m({1, 2, 3, 4}), m({1, 2, 5}), m({1, 3, 6})};
  const auto w = has_berge_star(wide, 3);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(check_embedding(wide, PatternGraph::star(3), *w));
  EXPECT_THROW((void)has_berge_star(wide, 2), ArityMismatch);
}

TEST(Detect, ArityAndSmallSets) {
  EXPECT_THROW((void)detect(std::vector{m({1, 2})}, PatternGraph::cycle(3)), ArityMismatch);
  EXPECT_FALSE(detect(std::vector{m({1}), m({1, 2}), m({1, 2, 3})}, PatternGraph::cycle(3)));
  EXPECT_FALSE(detect(std::vector{SubsetMask{}, m({1, 2}), m({1, 2, 3})}, PatternGraph::star(3)));
}

TEST(Detect, CheckEmbeddingRejectsBadMaps) {
  const std::vector<SubsetMask> fam{m({1, 2}), m({2, 3}), m({1, 3})};
  BergeEmbedding emb{{1, 2, 3}, {0, 1, 2}};
  EXPECT_TRUE(check_embedding(fam, PatternGraph::cycle(3), emb));
  EXPECT_FALSE(check_embedding(fam, PatternGraph::cycle(3), BergeEmbedding{{1, 2, 3}, {0, 0, 2}}));
  EXPECT_FALSE(check_embedding(fam, PatternGraph::cycle(3), BergeEmbedding{{1, 1, 3}, {0, 1, 2}}));
  EXPECT_FALSE(check_embedding(fam, PatternGraph::cycle(3), BergeEmbedding{{1, 2, 3}, {1, 0, 2}}));
}

// Specialized detectors against the generic backtracking oracle on all
// triples of subsets of [6] with at least two elements.
TEST(Oracle, TriplesOfSixExhaustive) {
  const auto sets = sets_of_size_at_least(6, 2);
  const auto c3 = PatternGraph::cycle(3);
  const auto s3 = PatternGraph::star(3);
  const auto p3 = PatternGraph::path(3);
  std::size_t disagreements = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      for (std::size_t k = j + 1; k < sets.size(); ++k) {
        const std::vector<SubsetMask> fam{sets[i], sets[j], sets[k]};
        for (const auto* g : {&c3, &s3, &p3}) {
          const auto fast = detect(fam, *g);
          const auto slow = find_berge_embedding(fam, *g);
          if (fast.has_value() != slow.has_value()) ++disagreements;
          if (fast && !check_embedding(fam, *g, *fast)) ++disagreements;
        }
        if (has_berge_triangle(fam[0], fam[1], fam[2]) != detect(fam, c3).has_value()) ++disagreements;
      }
    }
  }
  EXPECT_EQ(disagreements, 0U);
}

TEST(Oracle, QuadruplesOfSixSampled) {
  auto sets = sets_of_size_at_least(6, 2);
  std::mt19937_64 rng(99);
  const std::vector<PatternGraph> patterns{PatternGraph::cycle(4), PatternGraph::star(4), PatternGraph::path(4)};
  for (int trial = 0; trial < 20000; ++trial) {
    std::array<std::size_t, 4> idx{};
    do {
      for (auto& x : idx) x = rng() % sets.size();
      std::sort(idx.begin(), idx.end());
    } while (std::adjacent_find(idx.begin(), idx.end()) != idx.end());
    std::vector<SubsetMask> fam;
    for (auto x : idx) fam.push_back(sets[x]);
    std::shuffle(fam.begin(), fam.end(), rng);
    for (const auto& g : patterns) {
      const auto fast = detect(fam, g);
      ASSERT_EQ(fast.has_value(), find_berge_embedding(fam, g).has_value()) << g.name();
      if (fast) ASSERT_TRUE(check_embedding(fam, g, *fast)) << g.name();
    }
  }
}

TEST(Oracle, GeneralPatternsUseBacktracking) {
  // A triangle with a pendant edge.
  const auto g = PatternGraph::parse("edges:1-2,2-3,3-1,3-4");
  const std::vector<SubsetMask> yes{m({1, 2}), m({2, 3}), m({1, 3}), m({3, 4})};
  const auto emb = detect(yes, g);
  ASSERT_TRUE(emb.has_value());
  EXPECT_TRUE(check_embedding(yes, g, *emb));
  const std::vector<SubsetMask> no{m({1, 2}), m({2, 3}), m({1, 3}), m({1, 2, 3})};
  EXPECT_FALSE(detect(no, g).has_value());
}

TEST(Invariance, RelabelingPreservesVerdicts) {
  std::mt19937_64 rng(5);
  const auto sets = sets_of_size_at_least(7, 2);
  const std::vector<PatternGraph> patterns{PatternGraph::cycle(3), PatternGraph::cycle(4), PatternGraph::star(3),
                                           PatternGraph::path(3)};
  std::vector<int> perm(7);
  std::iota(perm.begin(), perm.end(), 1);
  for (int trial = 0; trial < 3000; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    for (const auto& g : patterns) {
      std::vector<SubsetMask> fam, image;
      for (int i = 0; i < g.edge_count(); ++i) fam.push_back(sets[rng() % sets.size()]);
      for (auto s : fam) image.push_back(relabel(s, perm));
      ASSERT_EQ(detect(fam, g).has_value(), detect(image, g).has_value());
    }
  }
}

TEST(Part, Examples) {
  const auto quad = quad_partition(GroundSet(6));
  for (const auto& part : quad.parts) {
    EXPECT_FALSE(part_is_g_free(part, PatternGraph::cycle(3)).has_value());
  }
  const std::vector<SubsetMask> tri{m({1, 2}), m({2, 3}), m({1, 3})};
  const auto w = part_is_g_free(tri, PatternGraph::cycle(3));
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(check_embedding(w->sets, PatternGraph::cycle(3), w->embedding));

  const std::vector<SubsetMask> with_extra{m({1, 2}), m({4, 5}), m({2, 3}), m({1, 3})};
  EXPECT_TRUE(completes_pattern(std::vector{m({1, 2}), m({2, 3})}, m({1, 3}), PatternGraph::cycle(3)));
  EXPECT_FALSE(completes_pattern(std::vector{m({1, 2}), m({4, 5})}, m({1, 3}), PatternGraph::cycle(3)));
  EXPECT_TRUE(part_is_g_free(with_extra, PatternGraph::cycle(3)).has_value());
}

TEST(Part, MonotoneUnderSupersets) {
  std::mt19937_64 rng(17);
  const auto sets = sets_of_size_at_least(6, 2);
  const auto g = PatternGraph::cycle(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<SubsetMask> part;
    for (int i = 0; i < 4; ++i) part.push_back(sets[rng() % sets.size()]);
    std::sort(part.begin(), part.end());
    part.erase(std::unique(part.begin(), part.end()), part.end());
    if (!part_is_g_free(part, g)) continue;
    auto bigger = part;
    for (int i = 0; i < 3; ++i) bigger.push_back(sets[rng() % sets.size()]);
    std::sort(bigger.begin(), bigger.end());
    bigger.erase(std::unique(bigger.begin(), bigger.end()), bigger.end());
    ASSERT_TRUE(part_is_g_free(bigger, g).has_value());
  }
}

TEST(Part, ComponentCertificateIsSound) {
  std::mt19937_64 rng(23);
  const auto sets = sets_of_size_at_least(8, 2);
  const std::vector<PatternGraph> patterns{PatternGraph::cycle(3), PatternGraph::cycle(4), PatternGraph::star(3),
                                           PatternGraph::path(3)};
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<SubsetMask> part;
    const int size = 2 + static_cast<int>(rng() % 6);
    while (static_cast<int>(part.size()) < size) {
      const auto s = sets[rng() % sets.size()];
      // Sparse sets so that small components are common.
      if (s.size() <= 3 && std::find(part.begin(), part.end(), s) == part.end()) part.push_back(s);
    }
    for (const auto& g : patterns) {
      const auto with = part_is_g_free(part, g, {true, false});
      const auto without = part_is_g_free(part, g, {false, true});
      ASSERT_EQ(with.has_value(), without.has_value());
    }
  }
}

TEST(Components, Sizes) {
  EXPECT_EQ(intersection_graph_components(std::vector{m({1, 2}), m({3, 4}), m({3, 4, 5})}), (std::vector<int>{1, 2}));
  EXPECT_EQ(intersection_graph_components(std::vector{SubsetMask{}}), (std::vector<int>{1}));
  EXPECT_TRUE(intersection_graph_components(std::vector<SubsetMask>{}).empty());
}

TEST(Partition, Verdicts) {
  EXPECT_TRUE(partition_is_g_free(quad_partition(GroundSet(6)), PatternGraph::star(3)).all_free());
  EXPECT_TRUE(partition_is_g_free(exceptional_partition_5(), PatternGraph::cycle(3)).all_free());

  Partition p = quad_partition(GroundSet(5));
  auto& target = p.parts[0];
  // Move {1,2},{1,3},{1,4},{1,5} into part 0 so that it holds a claw centered at 1.
  for (auto s : {m({1, 2}), m({1, 3}), m({1, 4}), m({1, 5})}) {
    for (auto& part : p.parts) std::erase(part, s);
    target.push_back(s);
  }
  ASSERT_TRUE(validate_partition(p).ok());
  const auto report = partition_is_g_free(p, PatternGraph::star(3));
  ASSERT_FALSE(report.all_free());
  EXPECT_EQ(report.first_bad_part, 0U);
  ASSERT_TRUE(report.first_witness.has_value());
  EXPECT_TRUE(check_embedding(report.first_witness->sets, PatternGraph::star(3), report.first_witness->embedding));

  Partition broken = quad_partition(GroundSet(4));
  broken.parts.pop_back();
  EXPECT_THROW((void)partition_is_g_free(broken, PatternGraph::cycle(3)), InvalidPartition);
}

TEST(Quadruple, Examples) {
  const GroundSet six(6);
  const auto psi = classify_quadruple(m({1, 2, 3}), m({4, 5, 6}), m({1, 4, 5, 6}), m({1, 4, 5}), six);
  EXPECT_EQ(psi.tag, QuadClass::Tag::Psi);
  EXPECT_EQ(psi.stem, m({1, 2, 3}));
  EXPECT_EQ(psi.apex, 1);
  EXPECT_EQ(classify_quadruple(m({1, 2, 3}), m({1, 2, 4}), m({1, 2, 5}), m({1, 2, 6}), six).tag,
            QuadClass::Tag::Neither);
  const auto c4 = classify_quadruple(m({1, 2}), m({2, 3}), m({3, 4}), m({1, 4}), six);
  EXPECT_EQ(c4.tag, QuadClass::Tag::C4);
  EXPECT_TRUE(c4.cycle.has_value());
}

// Every Ψ among medium/large quadruples of [6] has a unique stem, no 4-cycle,
// and the forced sizes.
TEST(Quadruple, PsiStructureAtSix) {
  const int n = 6;
  const GroundSet g(n);
  const auto sets = sets_of_size_at_least(n, n / 2);
  std::size_t psi_count = 0;
  for (std::size_t a = 0; a < sets.size(); ++a)
    for (std::size_t b = a + 1; b < sets.size(); ++b)
      for (std::size_t c = b + 1; c < sets.size(); ++c)
        for (std::size_t d = c + 1; d < sets.size(); ++d) {
          const std::array<SubsetMask, 4> q{sets[a], sets[b], sets[c], sets[d]};
          const auto cls = classify_quadruple(q[0], q[1], q[2], q[3], g);
          if (cls.tag != QuadClass::Tag::Psi) continue;
          ++psi_count;
          ASSERT_FALSE(has_berge_cycle4(q[0], q[1], q[2], q[3]).has_value());
          int stems = 0;
          SubsetMask rest;
          std::vector<SubsetMask> others;
          for (int i = 0; i < 4; ++i) {
            if (stem_condition(q, i)) ++stems;
            if (q[i] != cls.stem) {
              rest = rest | q[i];
              others.push_back(q[i]);
            }
          }
          ASSERT_EQ(stems, 1);
          ASSERT_EQ(cls.stem.size(), n / 2);
          ASSERT_EQ(rest.size(), n / 2 + 1);
          ASSERT_EQ(others.size(), 3U);
          for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) ASSERT_GE((others[i] & others[j]).size(), n / 2 - 1);
        }
  EXPECT_GT(psi_count, 0U);
}

TEST(Quadruple, SmallSetsNeverFormPsi) {
  const GroundSet g(6);
  // Stem condition holds but {1,2} is small.
  const auto cls = classify_quadruple(m({1, 2}), m({3, 4, 5}), m({3, 4, 6}), m({3, 5, 6}), g);
  EXPECT_NE(cls.tag, QuadClass::Tag::Psi);
}
