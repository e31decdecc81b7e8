#pragma once

// Ground-set arithmetic, subset masks and power-set partitions.
//
// A subset of [n] = {1..n} is a single 64-bit word: element i lives in bit
// i-1. Everything else in the library is built on top of SubsetMask.

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bergepart {

class GroundTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GroundTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SubsetMask {
  std::uint64_t bits = 0;

  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(std::uint64_t b) : bits(b) {}

  /// Builds a mask from 1-based element labels.
  static SubsetMask of(std::initializer_list<int> elements);
  static SubsetMask of(const std::vector<int>& elements);

  [[nodiscard]] constexpr int size() const { return std::popcount(bits); }
  [[nodiscard]] constexpr bool empty() const { return bits == 0; }
  [[nodiscard]] constexpr bool contains(int element) const {
    return (bits >> (element - 1)) & 1U;
  }
  [[nodiscard]] constexpr bool is_subset_of(SubsetMask other) const {
    return (bits & ~other.bits) == 0;
  }
  /// Ascending 1-based labels.
  [[nodiscard]] std::vector<int> elements() const;
  /// Compact rendering used throughout the text formats, e.g. "1,2,4".
  [[nodiscard]] std::string to_string() const;

  friend constexpr SubsetMask operator&(SubsetMask a, SubsetMask b) { return SubsetMask{a.bits & b.bits}; }
  friend constexpr SubsetMask operator|(SubsetMask a, SubsetMask b) { return SubsetMask{a.bits | b.bits}; }
  friend constexpr SubsetMask operator-(SubsetMask a, SubsetMask b) { return SubsetMask{a.bits & ~b.bits}; }
  friend constexpr bool operator==(SubsetMask, SubsetMask) = default;
  friend constexpr auto operator<=>(SubsetMask, SubsetMask) = default;
};

/// Lowest element (1-based) of a nonempty mask.
[[nodiscard]] constexpr int first_element(SubsetMask s) { return std::countr_zero(s.bits) + 1; }

class GroundSet {
 public:
  static constexpr int kMaxN = 63;

  explicit GroundSet(int n);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] SubsetMask full() const { return SubsetMask{(std::uint64_t{1} << n_) - 1}; }
  [[nodiscard]] bool contains(SubsetMask s) const { return (s.bits & ~full().bits) == 0; }
  /// 2^n; only meaningful for n <= 62.
  [[nodiscard]] std::uint64_t power_set_size() const { return std::uint64_t{1} << n_; }

  friend bool operator==(GroundSet, GroundSet) = default;

 private:
  int n_;
};

[[nodiscard]] inline SubsetMask complement(SubsetMask s, GroundSet ground) {
  return SubsetMask{~s.bits & ground.full().bits};
}

enum class Family { PowerSet, PowerSetStar };

[[nodiscard]] std::string_view family_name(Family f);
[[nodiscard]] std::optional<Family> parse_family(std::string_view name);
[[nodiscard]] bool in_family(SubsetMask s, GroundSet ground, Family family);

/// Size class of a set relative to n: Medium is exactly n/2 (even n),
/// Large is at least floor(n/2)+1.
enum class FamilyClass { Small, Medium, Large };

[[nodiscard]] FamilyClass classify_size(SubsetMask s, GroundSet ground);

/// Calls fn for every member of the family in ascending mask order.
void for_each_in_family(GroundSet ground, Family family, const std::function<void(SubsetMask)>& fn);

/// Materialized family in ascending mask order; requires n <= 30.
[[nodiscard]] std::vector<SubsetMask> enumerate_family(GroundSet ground, Family family);

/// All m-subsets of [n] in ascending mask order.
[[nodiscard]] std::vector<SubsetMask> subsets_of_size(GroundSet ground, int m);

/// Next mask with the same popcount (Gosper's hack). Caller checks the bound.
[[nodiscard]] constexpr std::uint64_t next_same_popcount(std::uint64_t v) {
  const std::uint64_t t = v | (v - 1);
  return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

using Part = std::vector<SubsetMask>;

struct Partition {
  GroundSet ground{1};
  Family family = Family::PowerSet;
  std::vector<Part> parts;

  [[nodiscard]] std::size_t set_count() const;
};

/// Sorts every part ascending and the parts lexicographically.
[[nodiscard]] Partition normalized(Partition p);

struct Violation {
  enum class Kind { Duplicate, Missing, Foreign };
  Kind kind;
  SubsetMask mask;
  /// Part index of the offending occurrence; -1 for Missing.
  int part_index;
};

[[nodiscard]] std::string_view violation_kind_name(Violation::Kind k);

struct ValidationReport {
  std::vector<Violation> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Checks that the parts are disjoint and cover exactly the declared family.
[[nodiscard]] ValidationReport validate_partition(const Partition& p);

/// Permutation of [n] in one-line form: perm[i-1] is the image of i.
using Permutation = std::vector<int>;

[[nodiscard]] SubsetMask apply_permutation(SubsetMask s, const Permutation& perm);
[[nodiscard]] Partition apply_permutation(const Partition& p, const Permutation& perm);

using CanonicalKey = std::string;

/// Key that is equal for two partitions iff one is a relabeling of the other.
/// Minimum over all n! relabelings, so n <= 8.
[[nodiscard]] CanonicalKey canonicalize(const Partition& p);

}  // namespace bergepart
