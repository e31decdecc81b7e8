#include "bergepart/search.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace bergepart {

namespace {

struct BudgetHit {};

// Depth-first coloring in a fixed set order with forward checking: blocked[j]
// marks the classes that set j can no longer join.
class Solver {
 public:
  Solver(const SearchConfig& cfg, int colors, std::uint64_t& nodes)
      : cfg_(cfg), ground_(cfg.n), colors_(colors), nodes_(nodes) {
    if (colors < 1 || colors > 64) throw std::invalid_argument("color count must be in 1..64");
    for_each_in_family(ground_, Family::PowerSetStar, [&](SubsetMask s) { sets_.push_back(s); });
    std::stable_sort(sets_.begin(), sets_.end(), [](SubsetMask a, SubsetMask b) { return a.size() > b.size(); });
    color_.assign(sets_.size(), -1);
    blocked_.assign(sets_.size(), 0);
    classes_.assign(colors, {});
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      if (cfg.symmetry && cfg.n >= 3 && sets_[i].size() == cfg.n - 1) {
        if (first_cosingleton_ < 0) first_cosingleton_ = static_cast<int>(i);
        last_cosingleton_ = static_cast<int>(i);
      }
    }
  }

  /// Calls on_solution for each complete coloring; stops when it returns true.
  /// Returns true iff stopped by the callback.
  bool run(const std::function<bool(const std::vector<int>&)>& on_solution) {
    on_solution_ = &on_solution;
    return descend(0, 0);
  }

  [[nodiscard]] Partition to_partition(const std::vector<int>& colors) const {
    const int used = *std::max_element(colors.begin(), colors.end()) + 1;
    Partition p{ground_, cfg_.family, std::vector<Part>(used)};
    for (std::size_t i = 0; i < sets_.size(); ++i) p.parts[colors[i]].push_back(sets_[i]);
    if (cfg_.family == Family::PowerSet) {
      p.parts[0].push_back(SubsetMask{});
      for (int e = 1; e <= ground_.n(); ++e) p.parts[0].push_back(SubsetMask::of({e}));
    }
    return p;
  }

  [[nodiscard]] const std::vector<SubsetMask>& sets() const { return sets_; }

 private:
  // Does adding `next` to class `col` (which just received `added`) create a
  // copy? Only copies through both sets are new.
  bool conflicts(int col, SubsetMask added, SubsetMask next) {
    const auto& members = classes_[col];
    const int k = cfg_.pattern.edge_count();
    if (k == 1) return true;
    const int others = static_cast<int>(members.size()) - 1;  // excluding `added`, stored last
    if (others < k - 2) return false;
    family_.assign(k, SubsetMask{});
    family_[k - 2] = added;
    family_[k - 1] = next;
    std::vector<int> idx(k - 2);
    std::function<bool(int, int)> rec = [&](int start, int depth) {
      if (depth == k - 2) return detect(family_, cfg_.pattern).has_value();
      for (int i = start; i <= others - (k - 2 - depth); ++i) {
        family_[depth] = members[i];
        if (rec(i + 1, depth + 1)) return true;
      }
      return false;
    };
    return rec(0, 0);
  }

  bool descend(std::size_t i, int used) {
    if (i == sets_.size()) return (*on_solution_)(color_);
    if (++nodes_ > cfg_.node_budget) throw BudgetHit{};

    int min_color = 0;
    if (first_cosingleton_ >= 0 && static_cast<int>(i) > first_cosingleton_ &&
        static_cast<int>(i) <= last_cosingleton_) {
      min_color = color_[i - 1];
    }
    const int limit = std::min(used + 1, colors_);
    for (int col = min_color; col < limit; ++col) {
      if ((blocked_[i] >> col) & 1U) continue;
      const std::size_t trail_mark = trail_.size();
      if (place(i, col) && descend(i + 1, std::max(used, col + 1))) return true;
      unplace(i, col, trail_mark);
    }
    return false;
  }

  bool place(std::size_t i, int col) {
    color_[i] = col;
    classes_[col].push_back(sets_[i]);
    const std::uint64_t bit = std::uint64_t{1} << col;
    for (std::size_t j = i + 1; j < sets_.size(); ++j) {
      if (blocked_[j] & bit) continue;
      if (conflicts(col, sets_[i], sets_[j])) {
        trail_.push_back(j);
        blocked_[j] |= bit;
        // Every class would be blocked for j once all colors are open.
        const std::uint64_t all = colors_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << colors_) - 1;
        if ((blocked_[j] & all) == all) return false;
      }
    }
    return true;
  }

  void unplace(std::size_t i, int col, std::size_t trail_mark) {
    const std::uint64_t bit = std::uint64_t{1} << col;
    while (trail_.size() > trail_mark) {
      blocked_[trail_.back()] &= ~bit;
      trail_.pop_back();
    }
    classes_[col].pop_back();
    color_[i] = -1;
  }

  const SearchConfig& cfg_;
  GroundSet ground_;
  int colors_;
  std::uint64_t& nodes_;
  std::vector<SubsetMask> sets_;
  std::vector<int> color_;
  std::vector<std::uint64_t> blocked_;
  std::vector<std::vector<SubsetMask>> classes_;
  std::vector<std::size_t> trail_;
  std::vector<SubsetMask> family_;
  int first_cosingleton_ = -1;
  int last_cosingleton_ = -1;
  const std::function<bool(const std::vector<int>&)>* on_solution_ = nullptr;
};

void check_config(const SearchConfig& cfg) {
  if (cfg.node_budget == 0) throw std::invalid_argument("node budget must be positive");
  if (cfg.n < 1 || cfg.n > 8) throw std::invalid_argument("exact search supports 1 <= n <= 8");
}

}  // namespace

std::optional<bool> colorable(const SearchConfig& cfg, int colors, std::uint64_t& nodes,
                              std::optional<Partition>* witness) {
  check_config(cfg);
  Solver solver(cfg, colors, nodes);
  if (solver.sets().empty()) {
    if (witness) *witness = Partition{GroundSet(cfg.n), cfg.family, {}};
    return true;
  }
  try {
    return solver.run([&](const std::vector<int>& coloring) {
      if (witness) *witness = solver.to_partition(coloring);
      return true;
    });
  } catch (const BudgetHit&) {
    return std::nullopt;
  }
}

SearchResult exact_f(const SearchConfig& cfg) {
  check_config(cfg);
  SearchResult result;
  const GroundSet ground(cfg.n);
  const auto total = enumerate_family(ground, Family::PowerSetStar).size();
  if (total == 0) {
    // Nothing can host an edge; one class holds everything.
    result.value = result.lower = result.upper = 1;
    Partition p{ground, cfg.family, {}};
    p.parts.push_back(enumerate_family(ground, cfg.family));
    result.witness = std::move(p);
    result.complete = true;
    return result;
  }
  result.upper = static_cast<int>(std::min<std::size_t>(total, 64));
  for (int colors = 1; colors <= result.upper; ++colors) {
    std::optional<Partition> witness;
    const auto feasible = colorable(cfg, colors, result.nodes_expanded, &witness);
    if (!feasible) {
      result.lower = colors;
      return result;
    }
    if (*feasible) {
      result.value = result.lower = result.upper = static_cast<int>(witness->parts.size());
      result.witness = std::move(witness);
      result.complete = true;
      return result;
    }
    result.lower = colors + 1;
  }
  return result;
}

CensusResult census_optimal(const SearchConfig& cfg) {
  check_config(cfg);
  if (cfg.n > 5) throw std::invalid_argument("census_optimal supports n <= 5");
  if (!cfg.prove_unique) throw std::invalid_argument("census_optimal needs prove_unique");
  CensusResult census;
  const auto best = exact_f(cfg);
  census.nodes_expanded = best.nodes_expanded;
  if (!best.complete) return census;
  census.value = *best.value;

  SearchConfig star_cfg = cfg;
  star_cfg.family = Family::PowerSetStar;
  Solver solver(star_cfg, census.value, census.nodes_expanded);
  std::set<CanonicalKey> keys;
  try {
    solver.run([&](const std::vector<int>& coloring) {
      ++census.colorings;
      Partition p = solver.to_partition(coloring);
      if (keys.insert(canonicalize(p)).second) census.representatives.push_back(std::move(p));
      return false;
    });
  } catch (const BudgetHit&) {
    census.classes = keys.size();
    return census;
  }
  census.classes = keys.size();
  census.complete = true;
  return census;
}

}  // namespace bergepart
