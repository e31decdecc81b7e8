#include "bergepart/setcore.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace bergepart {

SubsetMask SubsetMask::of(std::initializer_list<int> elements) {
  return of(std::vector<int>(elements));
}

SubsetMask SubsetMask::of(const std::vector<int>& elements) {
  std::uint64_t bits = 0;
  for (int e : elements) {
    if (e < 1 || e > GroundSet::kMaxN) throw std::out_of_range("element label out of range: " + std::to_string(e));
    bits |= std::uint64_t{1} << (e - 1);
  }
  return SubsetMask{bits};
}

std::vector<int> SubsetMask::elements() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t b = bits; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

std::string SubsetMask::to_string() const {
  std::string out;
  for (int e : elements()) {
    if (!out.empty()) out += ',';
    out += std::to_string(e);
  }
  return out;
}

GroundSet::GroundSet(int n) : n_(n) {
  if (n < 1) throw GroundTooSmall("ground set needs n >= 1, got " + std::to_string(n));
  if (n > kMaxN) throw GroundTooLarge("ground set limited to n <= 63, got " + std::to_string(n));
}

std::string_view family_name(Family f) {
  return f == Family::PowerSet ? "power_set" : "power_set_star";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "power_set" || name == "full") return Family::PowerSet;
  if (name == "power_set_star" || name == "star") return Family::PowerSetStar;
  return std::nullopt;
}

bool in_family(SubsetMask s, GroundSet ground, Family family) {
  if (!ground.contains(s)) return false;
  return family == Family::PowerSet || s.size() >= 2;
}

FamilyClass classify_size(SubsetMask s, GroundSet ground) {
  const int n = ground.n();
  const int size = s.size();
  if (n % 2 == 0 && 2 * size == n) return FamilyClass::Medium;
  if (size >= n / 2 + 1) return FamilyClass::Large;
  return FamilyClass::Small;
}

void for_each_in_family(GroundSet ground, Family family, const std::function<void(SubsetMask)>& fn) {
  const std::uint64_t last = ground.full().bits;
  for (std::uint64_t b = 0;; ++b) {
    if (family == Family::PowerSet || std::popcount(b) >= 2) fn(SubsetMask{b});
    if (b == last) break;
  }
}

std::vector<SubsetMask> enumerate_family(GroundSet ground, Family family) {
  if (ground.n() > 30) throw GroundTooLarge("enumerate_family materializes 2^n masks; n <= 30");
  std::vector<SubsetMask> out;
  out.reserve(ground.power_set_size());
  for_each_in_family(ground, family, [&](SubsetMask s) { out.push_back(s); });
  return out;
}

std::vector<SubsetMask> subsets_of_size(GroundSet ground, int m) {
  std::vector<SubsetMask> out;
  if (m < 0 || m > ground.n()) return out;
  if (m == 0) return {SubsetMask{}};
  const std::uint64_t full = ground.full().bits;
  for (std::uint64_t v = (std::uint64_t{1} << m) - 1; v <= full;) {
    out.push_back(SubsetMask{v});
    if (v == full) break;
    const std::uint64_t next = next_same_popcount(v);
    if (next <= v) break;
    v = next;
  }
  return out;
}

std::size_t Partition::set_count() const {
  std::size_t total = 0;
  for (const auto& part : parts) total += part.size();
  return total;
}

Partition normalized(Partition p) {
  for (auto& part : p.parts) std::sort(part.begin(), part.end());
  std::sort(p.parts.begin(), p.parts.end());
  return p;
}

std::string_view violation_kind_name(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::Duplicate: return "duplicate";
    case Violation::Kind::Missing: return "missing";
    case Violation::Kind::Foreign: return "foreign";
  }
  return "?";
}

ValidationReport validate_partition(const Partition& p) {
  ValidationReport report;
  const GroundSet ground = p.ground;
  std::unordered_map<std::uint64_t, int> owner;
  owner.reserve(p.set_count());
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    for (SubsetMask s : p.parts[i]) {
      const int idx = static_cast<int>(i);
      if (!in_family(s, ground, p.family)) {
        report.violations.push_back({Violation::Kind::Foreign, s, idx});
        continue;
      }
      if (!owner.emplace(s.bits, idx).second) report.violations.push_back({Violation::Kind::Duplicate, s, idx});
    }
  }
  // Every foreign set is excluded from `owner`, so the family is covered iff
  // the distinct in-family count matches its cardinality.
  std::uint64_t expected = ground.n() >= 63 ? 0 : ground.power_set_size();
  if (p.family == Family::PowerSetStar) expected -= 1 + static_cast<std::uint64_t>(ground.n());
  if (owner.size() != expected) {
    if (ground.n() > 30) throw GroundTooLarge("cannot list missing sets for n > 30");
    for_each_in_family(ground, p.family, [&](SubsetMask s) {
      if (!owner.contains(s.bits)) report.violations.push_back({Violation::Kind::Missing, s, -1});
    });
  }
  return report;
}

SubsetMask apply_permutation(SubsetMask s, const Permutation& perm) {
  std::uint64_t out = 0;
  for (std::uint64_t b = s.bits; b != 0; b &= b - 1) {
    out |= std::uint64_t{1} << (perm[std::countr_zero(b)] - 1);
  }
  return SubsetMask{out};
}

Partition apply_permutation(const Partition& p, const Permutation& perm) {
  Partition out{p.ground, p.family, {}};
  out.parts.reserve(p.parts.size());
  for (const auto& part : p.parts) {
    Part image;
    image.reserve(part.size());
    for (SubsetMask s : part) image.push_back(apply_permutation(s, perm));
    out.parts.push_back(std::move(image));
  }
  return out;
}

namespace {

// Parts become length-prefixed byte runs so that comparing keys compares the
// sorted part lists lexicographically.
CanonicalKey encode(std::vector<std::vector<std::uint8_t>>& parts) {
  for (auto& part : parts) std::sort(part.begin(), part.end());
  std::sort(parts.begin(), parts.end());
  CanonicalKey key;
  for (const auto& part : parts) {
    key.push_back(static_cast<char>(part.size()));
    for (std::uint8_t b : part) key.push_back(static_cast<char>(b));
  }
  return key;
}

}  // namespace

CanonicalKey canonicalize(const Partition& p) {
  const int n = p.ground.n();
  if (n > 8) throw GroundTooLarge("canonicalize enumerates n! relabelings; n <= 8");

  Permutation perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<std::uint8_t> table(std::size_t{1} << n);
  std::vector<std::vector<std::uint8_t>> parts(p.parts.size());
  std::optional<CanonicalKey> best;
  do {
    for (std::uint64_t b = 0; b < table.size(); ++b) {
      table[b] = static_cast<std::uint8_t>(apply_permutation(SubsetMask{b}, perm).bits);
    }
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
      parts[i].clear();
      for (SubsetMask s : p.parts[i]) parts[i].push_back(table[s.bits]);
    }
    CanonicalKey key = encode(parts);
    if (!best || key < *best) best = std::move(key);
  } while (std::next_permutation(perm.begin(), perm.end()));

  CanonicalKey header;
  header.push_back(static_cast<char>(n));
  header.push_back(p.family == Family::PowerSet ? 'P' : 'S');
  return header + *best;
}

}  // namespace bergepart
