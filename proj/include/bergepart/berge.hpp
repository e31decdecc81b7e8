#pragma once

// Berge copies of small graphs inside families of subsets.
//
// A family H forms a Berge-G when the edges of G can be matched bijectively
// to members of H with every edge contained in its image. Specialized
// detectors for triangles, 4-cycles, stars and paths reduce to a system of
// distinct representatives (bipartite matching); the generic detector is a
// plain backtracking search and serves as the oracle for the others.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bergepart/setcore.hpp"

namespace bergepart {

class ArityMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidPattern : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidPartition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PatternGraph {
 public:
  enum class Kind { Cycle, Path, Star, General };
  using Edge = std::pair<int, int>;

  /// Vertices are 0-based here. Rejects loops, repeated edges and isolated vertices.
  PatternGraph(int vertex_count, std::vector<Edge> edges);

  static PatternGraph cycle(int k);
  static PatternGraph path(int k);
  static PatternGraph star(int k);

  /// c3, c4, cK:<k>, pK:<k>, sK:<k>, the shorthands c<k>/p<k>/s<k>, or
  /// edges:1-2,2-3,... with 1-based vertex labels.
  static PatternGraph parse(std::string_view text);

  [[nodiscard]] int vertex_count() const { return vertex_count_; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] int edge_count() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] bool connected() const;
  /// Round-trips through parse().
  [[nodiscard]] std::string name() const;

 private:
  int vertex_count_;
  std::vector<Edge> edges_;
  Kind kind_ = Kind::General;
};

struct BergeEmbedding {
  /// vertex_map[v] is the 1-based element hosting pattern vertex v.
  std::vector<int> vertex_map;
  /// edge_map[e] indexes the family member hosting pattern edge e.
  std::vector<int> edge_map;
};

/// True iff `emb` is a valid Berge embedding of `g` into `family`.
[[nodiscard]] bool check_embedding(std::span<const SubsetMask> family, const PatternGraph& g,
                                   const BergeEmbedding& emb);

/// System of distinct representatives by augmenting paths; reps[i] is a
/// 1-based element of sets[i].
[[nodiscard]] std::optional<std::vector<int>> distinct_representatives(std::span<const SubsetMask> sets);

/// Generic detector: backtracking over edge-to-member assignments, then over
/// vertex representatives. Requires |family| == |E(g)|.
[[nodiscard]] std::optional<BergeEmbedding> find_berge_embedding(std::span<const SubsetMask> family,
                                                                 const PatternGraph& g);

[[nodiscard]] bool has_berge_triangle(SubsetMask a, SubsetMask b, SubsetMask c);

/// Tries the cyclic orders (abcd), (abdc), (acbd). The embedding is relative
/// to PatternGraph::cycle(4) and the input order a, b, c, d.
[[nodiscard]] std::optional<BergeEmbedding> has_berge_cycle4(SubsetMask a, SubsetMask b, SubsetMask c,
                                                             SubsetMask d);

/// Embedding relative to PatternGraph::star(k): vertex 0 is the center.
[[nodiscard]] std::optional<BergeEmbedding> has_berge_star(std::span<const SubsetMask> family, int k);

/// Embedding relative to PatternGraph::path(k), trying every member order.
[[nodiscard]] std::optional<BergeEmbedding> has_berge_path(std::span<const SubsetMask> family, int k);

/// Specialized detector for cycles of length 3/4, stars and paths, generic
/// search otherwise.
[[nodiscard]] std::optional<BergeEmbedding> detect(std::span<const SubsetMask> family, const PatternGraph& g);

struct Witness {
  std::vector<SubsetMask> sets;
  BergeEmbedding embedding;
};

struct FreenessOptions {
  /// Skip subset enumeration when every intersection-graph component is
  /// smaller than |E(g)| and g is connected.
  bool use_component_certificate = true;
  /// Route every check through the generic detector.
  bool generic_only = false;
};

[[nodiscard]] std::optional<Witness> part_is_g_free(std::span<const SubsetMask> part, const PatternGraph& g,
                                                    FreenessOptions options = {});

/// Looks only for Berge copies that use `added` together with members of `part`.
[[nodiscard]] bool completes_pattern(std::span<const SubsetMask> part, SubsetMask added, const PatternGraph& g);

struct PartVerdict {
  std::size_t part_index;
  bool free;
  bool by_certificate;
};

struct FreenessReport {
  std::vector<PartVerdict> verdicts;
  std::optional<std::size_t> first_bad_part;
  std::optional<Witness> first_witness;
  [[nodiscard]] bool all_free() const { return !first_bad_part.has_value(); }
};

/// Throws InvalidPartition if the partition does not validate.
[[nodiscard]] FreenessReport partition_is_g_free(const Partition& p, const PatternGraph& g,
                                                 FreenessOptions options = {});

/// Component sizes of the intersection graph, ascending.
[[nodiscard]] std::vector<int> intersection_graph_components(std::span<const SubsetMask> part);

struct QuadClass {
  enum class Tag { C4, Psi, Neither };
  Tag tag = Tag::Neither;
  std::optional<BergeEmbedding> cycle;
  SubsetMask stem;
  /// Element x with stem ∩ other ⊆ {x}; empty when all three intersections vanish.
  std::optional<int> apex;
};

/// Four distinct sets: Berge-C4, Ψ-configuration, or neither. Ψ is only
/// reported when all four sets are medium or large.
[[nodiscard]] QuadClass classify_quadruple(SubsetMask a, SubsetMask b, SubsetMask c, SubsetMask d, GroundSet ground);

}  // namespace bergepart
