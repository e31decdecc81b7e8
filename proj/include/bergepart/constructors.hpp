#pragma once

// Explicit partitions of the power set into pattern-free parts.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bergepart/setcore.hpp"

namespace bergepart {

class DesignConstructionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parts {A, [n]\A, A+n, [n]\(A+n)} for A ⊆ [n-1], one per complementary
/// pair {A, [n-1]\A}. 2^(n-2) parts covering P(n).
[[nodiscard]] Partition quad_partition(GroundSet ground);

/// The seven-part triangle-free partition of P*(5).
[[nodiscard]] Partition exceptional_partition_5();

/// Sets of size m whose element sum is r mod n.
struct ModularClass {
  int m = 0;
  int r = 0;
  std::vector<SubsetMask> members;
};

/// |A_{m,r}| for every residue r, by dynamic programming over elements.
[[nodiscard]] std::vector<std::uint64_t> modular_class_sizes(GroundSet ground, int m);

/// Smallest residue maximizing |A_{m,r}|.
[[nodiscard]] int best_residue(GroundSet ground, int m);

[[nodiscard]] ModularClass modular_class(GroundSet ground, int m, int r);

struct ModularLevel {
  int m = 0;
  int residue = 0;
  std::uint64_t class_size = 0;
  std::uint64_t parts = 0;
};

struct ConstructionStats {
  int n = 0;
  int k = 0;
  std::vector<ModularLevel> levels;
  std::uint64_t full_parts = 0;
  std::uint64_t leftover_sets = 0;
  std::uint64_t leftover_parts = 0;
  std::uint64_t total_parts = 0;
  /// total_parts / (2^n / (2(k-1))).
  double ratio = 0.0;
};

struct ModularPacking {
  Partition partition;
  ConstructionStats stats;
};

/// Packing construction for connected patterns with k edges: parts of 2(k-1)
/// sets whose small and large halves are disjoint, leftovers in chunks of k-1.
[[nodiscard]] ModularPacking modular_packing_partition(GroundSet ground, int k);

/// Same counts as modular_packing_partition without materializing parts;
/// works up to n = 62.
[[nodiscard]] ConstructionStats modular_packing_stats(GroundSet ground, int k);

/// Fifteen claw-free parts covering P*(6).
[[nodiscard]] Partition claw_partition_6();

/// A perfect matching of K6 as three 2-sets.
using OneFactor = std::array<SubsetMask, 3>;

/// The rotational one-factorization of K6 on Z5 ∪ {∞}, with ∞ = 6.
[[nodiscard]] std::vector<OneFactor> one_factorization_k6();

using Triple = SubsetMask;
using ParallelClass = std::array<Triple, 3>;

struct DesignTables9 {
  /// 28 parallel classes partitioning the 84 triples of [9].
  std::vector<ParallelClass> q;
  /// Indices into q of the four classes forming a Steiner triple system.
  std::array<int, 4> sts_classes{};
  std::array<SubsetMask, 9> a{}, b{}, c{}, d{}, e{}, f{};
};

/// Builds Q from seven pairwise disjoint Steiner triple systems on [9], each
/// resolved into its four parallel classes. Deterministic; cached.
[[nodiscard]] const DesignTables9& design_tables_9();

/// Every Steiner triple system on [9] (840 of them), each as 12 triples.
[[nodiscard]] std::vector<std::array<Triple, 12>> all_sts9();

/// Resolves an STS(9) into its four parallel classes.
[[nodiscard]] std::array<ParallelClass, 4> resolve_sts9(const std::array<Triple, 12>& sts);

/// 126 claw-free parts covering P*(9).
[[nodiscard]] Partition claw_partition_9();

}  // namespace bergepart
