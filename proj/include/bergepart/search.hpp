#pragma once

// Exact f(n, G) for tiny n by complete branch and bound over colorings of the
// power set.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bergepart/berge.hpp"
#include "bergepart/setcore.hpp"

namespace bergepart {

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchConfig {
  int n = 3;
  PatternGraph pattern = PatternGraph::cycle(3);
  /// Empty and singleton sets never take part in a Berge copy, so the star
  /// family gives the same value; for PowerSet they are appended to class 1.
  Family family = Family::PowerSetStar;
  std::uint64_t node_budget = std::uint64_t{1} << 40;
  /// Orbit pruning on the (n-1)-sets: their colors must be non-decreasing.
  bool symmetry = false;
  bool prove_unique = false;
};

struct SearchResult {
  /// Exact value when complete.
  std::optional<int> value;
  /// Proven bounds; equal when complete.
  int lower = 1;
  int upper = 1;
  std::optional<Partition> witness;
  std::uint64_t nodes_expanded = 0;
  bool complete = false;
};

[[nodiscard]] SearchResult exact_f(const SearchConfig& cfg);

/// Whether a coloring with at most `colors` classes exists; nullopt when the
/// budget runs out. On success `witness` receives the first coloring found.
[[nodiscard]] std::optional<bool> colorable(const SearchConfig& cfg, int colors, std::uint64_t& nodes,
                                            std::optional<Partition>* witness = nullptr);

struct CensusResult {
  int value = 0;
  /// Distinct optimal partitions up to relabeling of [n].
  std::uint64_t classes = 0;
  /// Optimal colorings enumerated (after color-order symmetry breaking).
  std::uint64_t colorings = 0;
  std::vector<Partition> representatives;
  std::uint64_t nodes_expanded = 0;
  bool complete = false;
};

/// Enumerates every optimal coloring and counts them up to permutations of
/// [n]. Needs n <= 5 and cfg.prove_unique.
[[nodiscard]] CensusResult census_optimal(const SearchConfig& cfg);

}  // namespace bergepart
