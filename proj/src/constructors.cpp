#include "bergepart/constructors.hpp"

#include <algorithm>
#include <bitset>
#include <functional>
#include <mutex>

namespace bergepart {

Partition quad_partition(GroundSet ground) {
  const int n = ground.n();
  if (n < 3) throw GroundTooSmall("quad_partition needs n >= 3");
  if (n > 30) throw GroundTooLarge("quad_partition materializes 2^(n-2) parts; n <= 30");
  Partition p{ground, Family::PowerSet, {}};
  p.parts.reserve(std::size_t{1} << (n - 2));
  const SubsetMask last{std::uint64_t{1} << (n - 1)};
  const SubsetMask lower = complement(last, ground);
  for (std::uint64_t bits = 0; bits <= lower.bits; ++bits) {
    const SubsetMask a{bits};
    // A and [n-1]\A give the same part; keep the smaller mask.
    if ((lower - a) < a) continue;
    const SubsetMask x3 = a | last;
    p.parts.push_back({a, complement(a, ground), x3, complement(x3, ground)});
  }
  return p;
}

Partition exceptional_partition_5() {
  auto sets = [](std::initializer_list<std::initializer_list<int>> list) {
    Part part;
    for (auto s : list) part.push_back(SubsetMask::of(s));
    return part;
  };
  Partition p{GroundSet(5), Family::PowerSetStar, {}};
  p.parts = {
      sets({{1, 2, 3, 4, 5}, {1, 2, 3, 4}}),
      sets({{1, 2, 4}, {2, 3, 4}, {2, 4, 5}, {2, 4}}),
      sets({{1, 2, 3}, {1, 3, 4}, {1, 3, 5}, {1, 3}}),
      sets({{1, 2}, {3, 5}, {1, 2, 3, 5}, {3, 4, 5}}),
      sets({{2, 3}, {4, 5}, {2, 3, 4, 5}, {1, 4, 5}}),
      sets({{3, 4}, {1, 5}, {1, 3, 4, 5}, {1, 2, 5}}),
      sets({{1, 4}, {2, 5}, {1, 2, 4, 5}, {2, 3, 5}}),
  };
  return p;
}

// ---------------------------------------------------------------------------
// Modular packing

namespace {

int residue_of(SubsetMask s, int n) {
  int sum = 0;
  for (std::uint64_t b = s.bits; b != 0; b &= b - 1) sum += std::countr_zero(b) + 1;
  return sum % n;
}

void check_packing_args(GroundSet ground, int k) {
  if (k < 2) throw std::invalid_argument("modular packing needs k >= 2");
  if (ground.n() < 2 * (k - 1)) throw GroundTooSmall("modular packing needs n >= 2(k-1)");
}

}  // namespace

std::vector<std::uint64_t> modular_class_sizes(GroundSet ground, int m) {
  const int n = ground.n();
  // count[j][r]: j-subsets of the elements seen so far with sum ≡ r.
  std::vector<std::vector<std::uint64_t>> count(m + 1, std::vector<std::uint64_t>(n, 0));
  count[0][0] = 1;
  for (int x = 1; x <= n; ++x) {
    for (int j = std::min(m, x); j >= 1; --j) {
      for (int r = 0; r < n; ++r) count[j][(r + x) % n] += count[j - 1][r];
    }
  }
  return count[m];
}

int best_residue(GroundSet ground, int m) {
  const auto sizes = modular_class_sizes(ground, m);
  return static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
}

ModularClass modular_class(GroundSet ground, int m, int r) {
  ModularClass out{m, r, {}};
  for (SubsetMask s : subsets_of_size(ground, m)) {
    if (residue_of(s, ground.n()) == r) out.members.push_back(s);
  }
  return out;
}

ConstructionStats modular_packing_stats(GroundSet ground, int k) {
  check_packing_args(ground, k);
  const int n = ground.n();
  if (n > 62) throw GroundTooLarge("modular_packing_stats needs n <= 62");
  ConstructionStats stats;
  stats.n = n;
  stats.k = k;
  for (int m = k - 1; 2 * m < n; ++m) {
    const auto sizes = modular_class_sizes(ground, m);
    const auto best = std::max_element(sizes.begin(), sizes.end());
    ModularLevel level{m, static_cast<int>(best - sizes.begin()), *best,
                       *best * static_cast<std::uint64_t>(m / (k - 1))};
    stats.full_parts += level.parts;
    stats.levels.push_back(level);
  }
  const std::uint64_t chunk = static_cast<std::uint64_t>(k - 1);
  stats.leftover_sets = ground.power_set_size() - stats.full_parts * 2 * chunk;
  stats.leftover_parts = (stats.leftover_sets + chunk - 1) / chunk;
  stats.total_parts = stats.full_parts + stats.leftover_parts;
  stats.ratio = static_cast<double>(stats.total_parts) * 2.0 * static_cast<double>(chunk) /
                static_cast<double>(ground.power_set_size());
  return stats;
}

ModularPacking modular_packing_partition(GroundSet ground, int k) {
  check_packing_args(ground, k);
  const int n = ground.n();
  if (n > 26) throw GroundTooLarge("modular_packing_partition materializes P(n); n <= 26");
  ModularPacking out{Partition{ground, Family::PowerSet, {}}, modular_packing_stats(ground, k)};
  auto& parts = out.partition.parts;
  std::vector<bool> used(ground.power_set_size(), false);
  const int chunk = k - 1;

  for (const auto& level : out.stats.levels) {
    const int m = level.m;
    for (SubsetMask a : modular_class(ground, m, level.residue).members) {
      const auto small = a.elements();
      const auto large = complement(a, ground).elements();
      const SubsetMask b = complement(a, ground);
      for (int i = 0; i < m / chunk; ++i) {
        Part part;
        part.reserve(2 * chunk);
        for (int j = 0; j < chunk; ++j) part.push_back(a - SubsetMask::of({small[chunk * i + j]}));
        for (int j = 0; j < chunk; ++j) part.push_back(b - SubsetMask::of({large[chunk * i + j]}));
        for (SubsetMask s : part) used[s.bits] = true;
        parts.push_back(std::move(part));
      }
    }
  }

  Part pending;
  for (std::uint64_t bits = 0; bits < used.size(); ++bits) {
    if (used[bits]) continue;
    pending.push_back(SubsetMask{bits});
    if (static_cast<int>(pending.size()) == chunk) parts.push_back(std::exchange(pending, {}));
  }
  if (!pending.empty()) parts.push_back(std::move(pending));
  return out;
}

// ---------------------------------------------------------------------------
// Claw-free designs

namespace {

// Subsets of size m in lexicographic order of their ascending element lists.
std::vector<SubsetMask> lex_subsets(int n, int m) {
  std::vector<SubsetMask> out;
  std::function<void(int, int, std::uint64_t)> rec = [&](int next, int left, std::uint64_t bits) {
    if (left == 0) {
      out.push_back(SubsetMask{bits});
      return;
    }
    for (int x = next; x <= n - left + 1; ++x) rec(x + 1, left - 1, bits | (std::uint64_t{1} << (x - 1)));
  };
  rec(1, m, 0);
  return out;
}

// Element label for i mod 9 with residue 0 written as 9.
int mod9(int i) {
  const int r = ((i % 9) + 9) % 9;
  return r == 0 ? 9 : r;
}

}  // namespace

std::vector<OneFactor> one_factorization_k6() {
  auto label = [](int z) { return ((z % 5) + 5) % 5 + 1; };
  std::vector<OneFactor> factors;
  for (int i = 0; i < 5; ++i) {
    factors.push_back({SubsetMask::of({label(i), 6}), SubsetMask::of({label(i + 1), label(i - 1)}),
                       SubsetMask::of({label(i + 2), label(i - 2)})});
  }
  return factors;
}

Partition claw_partition_6() {
  const GroundSet ground(6);
  Partition p{ground, Family::PowerSetStar, {}};
  auto s = [](std::initializer_list<int> e) { return SubsetMask::of(e); };

  const SubsetMask t123 = s({1, 2, 3});
  p.parts.push_back({t123, s({4, 5, 6}), s({1, 2}), s({1, 3}), s({2, 3}), s({4, 5}), s({4, 6}), s({5, 6})});

  // Complementary triple pairs other than {123, 456}, listed by the triple
  // containing 1. The last pair goes to R; the rest are grouped two by two.
  std::vector<std::pair<SubsetMask, SubsetMask>> pairs;
  for (SubsetMask t : lex_subsets(6, 3)) {
    if (t.contains(1) && t != t123) pairs.emplace_back(t, complement(t, ground));
  }
  const auto reserved = pairs.back();
  pairs.pop_back();
  for (std::size_t i = 0; i + 1 < pairs.size(); i += 2) {
    p.parts.push_back({pairs[i].first, pairs[i].second, pairs[i + 1].first, pairs[i + 1].second});
  }

  p.parts.push_back({s({1, 4}), s({2, 3, 4, 5, 6}), s({1, 2, 3, 5, 6})});
  p.parts.push_back({s({2, 5}), s({1, 3, 4, 5, 6}), s({1, 2, 3, 4, 6})});
  p.parts.push_back({s({3, 6}), s({1, 2, 4, 5, 6}), s({1, 2, 3, 4, 5})});

  for (const auto& factor : one_factorization_k6()) {
    p.parts.push_back({complement(factor[0], ground), complement(factor[1], ground), complement(factor[2], ground)});
  }

  const std::array<int, 7> hexagon{1, 5, 3, 4, 2, 6, 1};
  Part w;
  for (std::size_t i = 0; i + 1 < hexagon.size(); ++i) w.push_back(s({hexagon[i], hexagon[i + 1]}));
  p.parts.push_back(std::move(w));

  p.parts.push_back({ground.full(), reserved.first, reserved.second});
  return p;
}

std::vector<std::array<Triple, 12>> all_sts9() {
  // pair_used[x][y]: pair {x,y} already covered (0-based points).
  std::array<std::array<bool, 9>, 9> pair_used{};
  std::array<Triple, 12> blocks{};
  std::vector<std::array<Triple, 12>> out;
  std::function<void(int)> rec = [&](int depth) {
    if (depth == 12) {
      auto sorted = blocks;
      std::sort(sorted.begin(), sorted.end());
      out.push_back(sorted);
      return;
    }
    int x = -1, y = -1;
    for (int i = 0; i < 9 && x < 0; ++i) {
      for (int j = i + 1; j < 9; ++j) {
        if (!pair_used[i][j]) {
          x = i;
          y = j;
          break;
        }
      }
    }
    for (int z = y + 1; z < 9; ++z) {
      if (pair_used[x][z] || pair_used[y][z]) continue;
      pair_used[x][y] = pair_used[x][z] = pair_used[y][z] = true;
      blocks[depth] = SubsetMask::of({x + 1, y + 1, z + 1});
      rec(depth + 1);
      pair_used[x][y] = pair_used[x][z] = pair_used[y][z] = false;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::array<ParallelClass, 4> resolve_sts9(const std::array<Triple, 12>& sts) {
  std::array<ParallelClass, 4> classes{};
  std::array<bool, 12> taken{};
  int found = 0;
  for (int i = 0; i < 12; ++i) {
    if (taken[i]) continue;
    ParallelClass cls{sts[i]};
    int members = 1;
    taken[i] = true;
    for (int j = i + 1; j < 12 && members < 3; ++j) {
      if (taken[j]) continue;
      bool disjoint = true;
      for (int t = 0; t < members; ++t) disjoint = disjoint && (cls[t] & sts[j]).empty();
      if (disjoint) {
        cls[members++] = sts[j];
        taken[j] = true;
      }
    }
    if (members != 3 || found == 4) throw DesignConstructionFailed("triple system is not resolvable");
    classes[found++] = cls;
  }
  if (found != 4) throw DesignConstructionFailed("triple system is not resolvable");
  return classes;
}

namespace {

void check_tables(const DesignTables9& t) {
  const auto triples = subsets_of_size(GroundSet(9), 3);
  if (t.q.size() != 28) throw DesignConstructionFailed("Q must have 28 classes");
  std::vector<SubsetMask> seen;
  for (const auto& cls : t.q) {
    if (!(cls[0] & cls[1]).empty() || !(cls[0] & cls[2]).empty() || !(cls[1] & cls[2]).empty()) {
      throw DesignConstructionFailed("class of Q is not a parallel class");
    }
    seen.insert(seen.end(), cls.begin(), cls.end());
  }
  std::sort(seen.begin(), seen.end());
  if (seen != triples) throw DesignConstructionFailed("Q does not partition the triples of [9]");
  std::array<int, 81> pair_count{};
  for (int idx : t.sts_classes) {
    for (Triple tr : t.q[idx]) {
      const auto e = tr.elements();
      ++pair_count[(e[0] - 1) * 9 + e[1] - 1];
      ++pair_count[(e[0] - 1) * 9 + e[2] - 1];
      ++pair_count[(e[1] - 1) * 9 + e[2] - 1];
    }
  }
  for (int x = 0; x < 9; ++x) {
    for (int y = x + 1; y < 9; ++y) {
      if (pair_count[x * 9 + y] != 1) throw DesignConstructionFailed("designated classes are not a Steiner system");
    }
  }
}

DesignTables9 build_tables() {
  const auto triples = subsets_of_size(GroundSet(9), 3);
  auto triple_index = [&](Triple t) {
    return static_cast<std::size_t>(std::lower_bound(triples.begin(), triples.end(), t) - triples.begin());
  };
  const auto systems = all_sts9();
  std::vector<std::bitset<84>> footprint(systems.size());
  std::vector<std::vector<std::size_t>> containing(84);
  for (std::size_t s = 0; s < systems.size(); ++s) {
    for (Triple t : systems[s]) {
      footprint[s].set(triple_index(t));
      containing[triple_index(t)].push_back(s);
    }
  }

  // Exact cover of the 84 triples by seven systems: branch on the lowest
  // uncovered triple, trying systems in sorted order.
  std::vector<std::size_t> chosen;
  std::bitset<84> covered;
  std::function<bool()> rec = [&]() {
    if (covered.all()) return true;
    std::size_t t = 0;
    while (covered.test(t)) ++t;
    for (std::size_t s : containing[t]) {
      if ((footprint[s] & covered).any()) continue;
      covered |= footprint[s];
      chosen.push_back(s);
      if (rec()) return true;
      chosen.pop_back();
      covered &= ~footprint[s];
    }
    return false;
  };
  if (!rec() || chosen.size() != 7) throw DesignConstructionFailed("no large set of Steiner triple systems found");

  DesignTables9 tables;
  for (std::size_t s : chosen) {
    for (const auto& cls : resolve_sts9(systems[s])) tables.q.push_back(cls);
  }
  tables.sts_classes = {0, 1, 2, 3};

  const SubsetMask all = GroundSet(9).full();
  for (int i = 1; i <= 9; ++i) {
    auto m = [&](std::initializer_list<int> offsets) {
      std::vector<int> e;
      for (int o : offsets) e.push_back(mod9(i + o));
      return SubsetMask::of(e);
    };
    tables.a[i - 1] = m({1, 2, 3, 6});
    tables.b[i - 1] = m({4, 5, 7, 8});
    tables.c[i - 1] = all - m({1, 2});
    tables.d[i - 1] = all - m({3, 6});
    tables.e[i - 1] = all - m({4, 8});
    tables.f[i - 1] = all - m({5, 7});
  }
  check_tables(tables);
  return tables;
}

}  // namespace

const DesignTables9& design_tables_9() {
  static const DesignTables9 tables = build_tables();
  return tables;
}

Partition claw_partition_9() {
  const GroundSet ground(9);
  const auto& t = design_tables_9();
  Partition p{ground, Family::PowerSetStar, {}};

  for (int idx : t.sts_classes) {
    Part part(t.q[idx].begin(), t.q[idx].end());
    for (Triple tr : t.q[idx]) {
      const auto e = tr.elements();
      part.push_back(SubsetMask::of({e[0], e[1]}));
      part.push_back(SubsetMask::of({e[0], e[2]}));
      part.push_back(SubsetMask::of({e[1], e[2]}));
    }
    p.parts.push_back(std::move(part));
  }

  std::vector<int> rest;
  for (int i = 0; i < static_cast<int>(t.q.size()); ++i) {
    if (std::find(t.sts_classes.begin(), t.sts_classes.end(), i) == t.sts_classes.end()) rest.push_back(i);
  }
  for (std::size_t i = 0; i + 1 < rest.size(); i += 2) {
    Part part(t.q[rest[i]].begin(), t.q[rest[i]].end());
    part.insert(part.end(), t.q[rest[i + 1]].begin(), t.q[rest[i + 1]].end());
    p.parts.push_back(std::move(part));
  }

  for (const auto& cls : t.q) {
    p.parts.push_back({complement(cls[0], ground), complement(cls[1], ground), complement(cls[2], ground)});
  }

  for (int i = 0; i < 9; ++i) {
    const SubsetMask own = SubsetMask::of({i + 1});
    p.parts.push_back({t.a[i] | own, t.b[i] | own, t.a[i] | t.b[i]});
  }
  for (int i = 0; i < 9; ++i) p.parts.push_back({t.a[i], t.c[i], t.d[i]});
  for (int i = 0; i < 9; ++i) p.parts.push_back({t.b[i], t.e[i], t.f[i]});

  std::vector<SubsetMask> remaining;
  for (SubsetMask q : lex_subsets(9, 4)) {
    const bool consumed = std::find(t.a.begin(), t.a.end(), q) != t.a.end() ||
                          std::find(t.b.begin(), t.b.end(), q) != t.b.end();
    if (!consumed) remaining.push_back(q);
  }
  for (std::size_t i = 0; i + 1 < remaining.size(); i += 2) {
    p.parts.push_back({remaining[i], complement(remaining[i], ground), remaining[i + 1],
                       complement(remaining[i + 1], ground)});
  }

  p.parts.push_back({ground.full()});
  return p;
}

}  // namespace bergepart
