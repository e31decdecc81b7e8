#include "bergepart/berge.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>
#include <set>

namespace bergepart {

// ---------------------------------------------------------------------------
// PatternGraph

PatternGraph::PatternGraph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 2) throw InvalidPattern("pattern needs at least two vertices");
  if (edges_.empty()) throw InvalidPattern("pattern needs at least one edge");
  std::set<std::pair<int, int>> seen;
  std::vector<int> degree(vertex_count_, 0);
  for (auto [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= vertex_count_ || v >= vertex_count_) throw InvalidPattern("edge endpoint out of range");
    if (u == v) throw InvalidPattern("pattern has a loop");
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) throw InvalidPattern("pattern has a repeated edge");
    ++degree[u];
    ++degree[v];
  }
  if (std::find(degree.begin(), degree.end(), 0) != degree.end()) {
    throw InvalidPattern("pattern has an isolated vertex");
  }
}

PatternGraph PatternGraph::cycle(int k) {
  if (k < 3) throw InvalidPattern("cycle needs k >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) edges.emplace_back(i, (i + 1) % k);
  PatternGraph g(k, std::move(edges));
  g.kind_ = Kind::Cycle;
  return g;
}

PatternGraph PatternGraph::path(int k) {
  if (k < 1) throw InvalidPattern("path needs k >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) edges.emplace_back(i, i + 1);
  PatternGraph g(k + 1, std::move(edges));
  g.kind_ = Kind::Path;
  return g;
}

PatternGraph PatternGraph::star(int k) {
  if (k < 1) throw InvalidPattern("star needs k >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) edges.emplace_back(0, i + 1);
  PatternGraph g(k + 1, std::move(edges));
  g.kind_ = Kind::Star;
  return g;
}

namespace {

int parse_positive(std::string_view token, std::string_view what) {
  int value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end || value < 1) {
    throw InvalidPattern("bad " + std::string(what) + ": '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

PatternGraph PatternGraph::parse(std::string_view text) {
  if (text.rfind("edges:", 0) == 0) {
    std::vector<Edge> edges;
    int max_vertex = 0;
    std::string_view rest = text.substr(6);
    while (!rest.empty()) {
      const std::size_t comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const std::size_t dash = item.find('-');
      if (dash == std::string_view::npos) throw InvalidPattern("edge must read u-v: '" + std::string(item) + "'");
      const int u = parse_positive(item.substr(0, dash), "vertex");
      const int v = parse_positive(item.substr(dash + 1), "vertex");
      max_vertex = std::max({max_vertex, u, v});
      edges.emplace_back(u - 1, v - 1);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return PatternGraph(max_vertex, std::move(edges));
  }
  if (text.size() < 2) throw InvalidPattern("unknown pattern: '" + std::string(text) + "'");
  const char family = static_cast<char>(std::tolower(static_cast<unsigned char>(text[0])));
  std::string_view count = text.substr(1);
  if (count.size() > 2 && (count[0] == 'K' || count[0] == 'k') && count[1] == ':') count.remove_prefix(2);
  const int k = parse_positive(count, "edge count");
  switch (family) {
    case 'c': return cycle(k);
    case 'p': return path(k);
    case 's': return star(k);
    default: throw InvalidPattern("unknown pattern: '" + std::string(text) + "'");
  }
}

bool PatternGraph::connected() const {
  std::vector<int> parent(vertex_count_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = vertex_count_;
  for (auto [u, v] : edges_) {
    const int a = find(u), b = find(v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

std::string PatternGraph::name() const {
  switch (kind_) {
    case Kind::Cycle: return "c" + std::to_string(edge_count());
    case Kind::Path: return "p" + std::to_string(edge_count());
    case Kind::Star: return "s" + std::to_string(edge_count());
    case Kind::General: break;
  }
  std::string out = "edges:";
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(edges_[i].first + 1) + "-" + std::to_string(edges_[i].second + 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matching and embeddings

bool check_embedding(std::span<const SubsetMask> family, const PatternGraph& g, const BergeEmbedding& emb) {
  if (static_cast<int>(emb.vertex_map.size()) != g.vertex_count()) return false;
  if (static_cast<int>(emb.edge_map.size()) != g.edge_count()) return false;
  if (family.size() != emb.edge_map.size()) return false;
  std::set<int> elements(emb.vertex_map.begin(), emb.vertex_map.end());
  if (elements.size() != emb.vertex_map.size()) return false;
  std::set<int> members(emb.edge_map.begin(), emb.edge_map.end());
  if (members.size() != emb.edge_map.size()) return false;
  for (int e = 0; e < g.edge_count(); ++e) {
    const int j = emb.edge_map[e];
    if (j < 0 || j >= static_cast<int>(family.size())) return false;
    const auto [u, v] = g.edges()[e];
    const int x = emb.vertex_map[u], y = emb.vertex_map[v];
    if (x < 1 || y < 1 || x > GroundSet::kMaxN || y > GroundSet::kMaxN) return false;
    if (!family[j].contains(x) || !family[j].contains(y)) return false;
  }
  return true;
}

namespace {

// Kuhn's augmenting paths; owner[element] holds the set index using it.
bool augment(std::span<const SubsetMask> sets, std::size_t i, std::array<int, 64>& owner, std::uint64_t& visited) {
  for (std::uint64_t b = sets[i].bits & ~visited; b != 0; b &= b - 1) {
    const int x = std::countr_zero(b);
    visited |= std::uint64_t{1} << x;
    if (owner[x] < 0 || augment(sets, static_cast<std::size_t>(owner[x]), owner, visited)) {
      owner[x] = static_cast<int>(i);
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> distinct_representatives(std::span<const SubsetMask> sets) {
  std::array<int, 64> owner;
  owner.fill(-1);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::uint64_t visited = 0;
    if (!augment(sets, i, owner, visited)) return std::nullopt;
  }
  std::vector<int> reps(sets.size());
  for (int x = 0; x < 64; ++x) {
    if (owner[x] >= 0) reps[owner[x]] = x + 1;
  }
  return reps;
}

namespace {

struct GenericSearch {
  std::span<const SubsetMask> family;
  const PatternGraph& g;
  std::vector<std::uint64_t> domain;  // per pattern vertex
  std::vector<int> edge_map;
  std::vector<int> vertex_map;
  std::uint64_t used_members = 0;

  bool assign_edge(int e) {
    if (e == g.edge_count()) return assign_vertex(0, 0);
    const auto [u, v] = g.edges()[e];
    for (int j = 0; j < static_cast<int>(family.size()); ++j) {
      if ((used_members >> j) & 1U) continue;
      const std::uint64_t du = domain[u] & family[j].bits;
      const std::uint64_t dv = domain[v] & family[j].bits;
      if (du == 0 || dv == 0 || std::popcount(du | dv) < 2) continue;
      const std::uint64_t saved_u = domain[u], saved_v = domain[v];
      domain[u] = du;
      domain[v] = dv;
      used_members |= std::uint64_t{1} << j;
      edge_map[e] = j;
      if (assign_edge(e + 1)) return true;
      used_members &= ~(std::uint64_t{1} << j);
      domain[u] = saved_u;
      domain[v] = saved_v;
    }
    return false;
  }

  bool assign_vertex(int v, std::uint64_t used_elements) {
    if (v == g.vertex_count()) return true;
    for (std::uint64_t b = domain[v] & ~used_elements; b != 0; b &= b - 1) {
      const int x = std::countr_zero(b);
      vertex_map[v] = x + 1;
      if (assign_vertex(v + 1, used_elements | (std::uint64_t{1} << x))) return true;
    }
    return false;
  }
};

std::optional<BergeEmbedding> cycle_in_order(std::span<const SubsetMask> family, std::span<const int> order) {
  const std::size_t k = order.size();
  std::array<SubsetMask, 8> meet{};
  for (std::size_t v = 0; v < k; ++v) {
    meet[v] = family[order[(v + k - 1) % k]] & family[order[v]];
    if (meet[v].empty()) return std::nullopt;
  }
  auto reps = distinct_representatives(std::span<const SubsetMask>(meet.data(), k));
  if (!reps) return std::nullopt;
  return BergeEmbedding{std::move(*reps), std::vector<int>(order.begin(), order.end())};
}

bool hostable(SubsetMask s) { return s.size() >= 2; }

}  // namespace

std::optional<BergeEmbedding> find_berge_embedding(std::span<const SubsetMask> family, const PatternGraph& g) {
  if (static_cast<int>(family.size()) != g.edge_count()) {
    throw ArityMismatch("family has " + std::to_string(family.size()) + " members, pattern has " +
                        std::to_string(g.edge_count()) + " edges");
  }
  if (family.size() > 64) throw ArityMismatch("at most 64 members supported");
  GenericSearch search{family, g, std::vector<std::uint64_t>(g.vertex_count(), ~std::uint64_t{0}),
                       std::vector<int>(g.edge_count(), -1), std::vector<int>(g.vertex_count(), 0)};
  if (!search.assign_edge(0)) return std::nullopt;
  return BergeEmbedding{std::move(search.vertex_map), std::move(search.edge_map)};
}

bool has_berge_triangle(SubsetMask a, SubsetMask b, SubsetMask c) {
  const std::array<SubsetMask, 3> meet{a & b, b & c, a & c};
  if (meet[0].empty() || meet[1].empty() || meet[2].empty()) return false;
  return distinct_representatives(meet).has_value();
}

std::optional<BergeEmbedding> has_berge_cycle4(SubsetMask a, SubsetMask b, SubsetMask c, SubsetMask d) {
  const std::array<SubsetMask, 4> family{a, b, c, d};
  static constexpr std::array<std::array<int, 4>, 3> kOrders{{{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}}};
  for (const auto& order : kOrders) {
    if (auto emb = cycle_in_order(family, order)) return emb;
  }
  return std::nullopt;
}

std::optional<BergeEmbedding> has_berge_star(std::span<const SubsetMask> family, int k) {
  if (static_cast<int>(family.size()) != k) {
    throw ArityMismatch("star with " + std::to_string(k) + " edges needs " + std::to_string(k) + " sets");
  }
  std::uint64_t common = ~std::uint64_t{0};
  for (SubsetMask s : family) common &= s.bits;
  std::vector<SubsetMask> leaves(family.size());
  for (std::uint64_t b = common; b != 0; b &= b - 1) {
    const SubsetMask center{b & -b};
    for (std::size_t i = 0; i < family.size(); ++i) leaves[i] = family[i] - center;
    if (auto reps = distinct_representatives(leaves)) {
      BergeEmbedding emb;
      emb.vertex_map.push_back(first_element(center));
      emb.vertex_map.insert(emb.vertex_map.end(), reps->begin(), reps->end());
      emb.edge_map.resize(family.size());
      std::iota(emb.edge_map.begin(), emb.edge_map.end(), 0);
      return emb;
    }
  }
  return std::nullopt;
}

std::optional<BergeEmbedding> has_berge_path(std::span<const SubsetMask> family, int k) {
  if (static_cast<int>(family.size()) != k) {
    throw ArityMismatch("path with " + std::to_string(k) + " edges needs " + std::to_string(k) + " sets");
  }
  std::vector<int> order(family.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<SubsetMask> slots(family.size() + 1);
  do {
    // A path and its reversal give the same copy.
    if (order.front() > order.back()) continue;
    slots[0] = family[order[0]];
    bool feasible = true;
    for (std::size_t v = 1; v < family.size(); ++v) {
      slots[v] = family[order[v - 1]] & family[order[v]];
      if (slots[v].empty()) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    slots[family.size()] = family[order.back()];
    if (auto reps = distinct_representatives(slots)) return BergeEmbedding{std::move(*reps), order};
  } while (std::next_permutation(order.begin(), order.end()));
  return std::nullopt;
}

std::optional<BergeEmbedding> detect(std::span<const SubsetMask> family, const PatternGraph& g) {
  if (static_cast<int>(family.size()) != g.edge_count()) {
    throw ArityMismatch("family size does not match the pattern's edge count");
  }
  for (SubsetMask s : family) {
    if (!hostable(s)) return std::nullopt;
  }
  const int k = g.edge_count();
  switch (g.kind()) {
    case PatternGraph::Kind::Cycle:
      if (k == 3) {
        static constexpr std::array<int, 3> kOrder{0, 1, 2};
        return cycle_in_order(family, kOrder);
      }
      if (k == 4) return has_berge_cycle4(family[0], family[1], family[2], family[3]);
      break;
    case PatternGraph::Kind::Star: return has_berge_star(family, k);
    case PatternGraph::Kind::Path: return has_berge_path(family, k);
    case PatternGraph::Kind::General: break;
  }
  return find_berge_embedding(family, g);
}

// ---------------------------------------------------------------------------
// Parts and partitions

std::vector<int> intersection_graph_components(std::span<const SubsetMask> part) {
  std::vector<int> parent(part.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < part.size(); ++i) {
    for (std::size_t j = i + 1; j < part.size(); ++j) {
      if (!(part[i] & part[j]).empty()) parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
    }
  }
  std::vector<int> size(part.size(), 0);
  for (std::size_t i = 0; i < part.size(); ++i) ++size[find(static_cast<int>(i))];
  std::vector<int> out;
  for (int s : size) {
    if (s > 0) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Visits every k-subset of `pool` (as index combinations) until fn returns true.
template <typename Fn>
bool any_combination(std::size_t pool, int k, Fn&& fn) {
  if (k < 0 || static_cast<std::size_t>(k) > pool) return false;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (fn(std::span<const std::size_t>(idx))) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == pool - static_cast<std::size_t>(k - i)) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::optional<Witness> part_is_g_free(std::span<const SubsetMask> part, const PatternGraph& g, FreenessOptions options) {
  std::vector<SubsetMask> pool;
  for (SubsetMask s : part) {
    if (hostable(s)) pool.push_back(s);
  }
  const int k = g.edge_count();
  if (static_cast<int>(pool.size()) < k) return std::nullopt;
  if (options.use_component_certificate && g.connected()) {
    const auto sizes = intersection_graph_components(pool);
    if (sizes.back() < k) return std::nullopt;
  }
  std::optional<Witness> witness;
  std::vector<SubsetMask> family(k);
  any_combination(pool.size(), k, [&](std::span<const std::size_t> idx) {
    for (int i = 0; i < k; ++i) family[i] = pool[idx[i]];
    auto emb = options.generic_only ? find_berge_embedding(family, g) : detect(family, g);
    if (!emb) return false;
    witness = Witness{family, std::move(*emb)};
    return true;
  });
  return witness;
}

bool completes_pattern(std::span<const SubsetMask> part, SubsetMask added, const PatternGraph& g) {
  if (!hostable(added)) return false;
  std::vector<SubsetMask> pool;
  for (SubsetMask s : part) {
    if (hostable(s) && s != added) pool.push_back(s);
  }
  const int k = g.edge_count();
  std::vector<SubsetMask> family(k);
  family[k - 1] = added;
  return any_combination(pool.size(), k - 1, [&](std::span<const std::size_t> idx) {
    for (int i = 0; i < k - 1; ++i) family[i] = pool[idx[i]];
    return detect(family, g).has_value();
  });
}

FreenessReport partition_is_g_free(const Partition& p, const PatternGraph& g, FreenessOptions options) {
  const auto validation = validate_partition(p);
  if (!validation.ok()) {
    const auto& v = validation.violations.front();
    throw InvalidPartition("partition does not validate: " + std::string(violation_kind_name(v.kind)) + " set {" +
                           v.mask.to_string() + "}");
  }
  FreenessReport report;
  const bool certificate_applies = options.use_component_certificate && g.connected();
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    const auto& part = p.parts[i];
    bool by_certificate = false;
    if (certificate_applies) {
      std::vector<SubsetMask> pool;
      for (SubsetMask s : part) {
        if (hostable(s)) pool.push_back(s);
      }
      by_certificate = pool.size() < static_cast<std::size_t>(g.edge_count()) ||
                       intersection_graph_components(pool).back() < g.edge_count();
    }
    auto witness = by_certificate ? std::nullopt : part_is_g_free(part, g, options);
    report.verdicts.push_back({i, !witness.has_value(), by_certificate});
    if (witness && !report.first_bad_part) {
      report.first_bad_part = i;
      report.first_witness = std::move(witness);
    }
  }
  return report;
}

QuadClass classify_quadruple(SubsetMask a, SubsetMask b, SubsetMask c, SubsetMask d, GroundSet ground) {
  QuadClass out;
  if (auto emb = has_berge_cycle4(a, b, c, d)) {
    out.tag = QuadClass::Tag::C4;
    out.cycle = std::move(emb);
    return out;
  }
  const std::array<SubsetMask, 4> sets{a, b, c, d};
  for (SubsetMask s : sets) {
    if (classify_size(s, ground) == FamilyClass::Small) return out;
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    SubsetMask touched;
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (j != i) touched = touched | (sets[i] & sets[j]);
    }
    if (touched.size() <= 1) {
      out.tag = QuadClass::Tag::Psi;
      out.stem = sets[i];
      if (!touched.empty()) out.apex = first_element(touched);
      return out;
    }
  }
  return out;
}

}  // namespace bergepart
