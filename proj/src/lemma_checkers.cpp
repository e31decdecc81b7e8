#include "bergepart/lemma_checkers.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <thread>

#include "bergepart/berge.hpp"

namespace bergepart {

std::string_view statement_label(Statement s) {
  switch (s) {
    case Statement::Triangle1: return "triangle.1";
    case Statement::Triangle2: return "triangle.2";
    case Statement::Triangle3: return "triangle.3";
    case Statement::Triangle4: return "triangle.4";
    case Statement::C4Claim: return "c4claim";
    case Statement::EvenC4_1: return "c4even.1";
    case Statement::EvenC4_2: return "c4even.2";
    case Statement::EvenC4_3: return "c4even.3";
    case Statement::EvenC4_4: return "c4even.4";
    case Statement::OddC4: return "c4odd";
  }
  return "?";
}

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(seed + kGolden) ^ mix64(stream * kGolden + 1)) {}

std::uint64_t CounterRng::next() {
  state_ += kGolden;
  return mix64(state_);
}

std::uint64_t CounterRng::below(std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v = next();
  while (v >= limit) v = next();
  return v % bound;
}

namespace {

enum class Pool { Medium, Large, MediumOrLarge };

struct Shape {
  std::vector<std::pair<Pool, int>> pools;
  /// Size of the sub-tuples that must carry the structure.
  int arity;
};

Shape shape_of(Statement s) {
  switch (s) {
    case Statement::Triangle1: return {{{Pool::Medium, 5}}, 3};
    case Statement::Triangle2: return {{{Pool::Medium, 3}, {Pool::Large, 1}}, 3};
    case Statement::Triangle3: return {{{Pool::Medium, 1}, {Pool::Large, 2}}, 3};
    case Statement::Triangle4: return {{{Pool::Large, 3}}, 3};
    case Statement::C4Claim: return {{{Pool::MediumOrLarge, 4}}, 4};
    case Statement::EvenC4_1: return {{{Pool::Medium, 5}}, 4};
    case Statement::EvenC4_2: return {{{Pool::Medium, 4}, {Pool::Large, 1}}, 4};
    case Statement::EvenC4_3: return {{{Pool::Medium, 2}, {Pool::Large, 2}}, 4};
    case Statement::EvenC4_4: return {{{Pool::Medium, 1}, {Pool::Large, 3}}, 4};
    case Statement::OddC4: return {{{Pool::Large, 4}}, 4};
  }
  return {{}, 0};
}

bool in_pool(SubsetMask s, Pool pool, GroundSet ground) {
  const FamilyClass cls = classify_size(s, ground);
  switch (pool) {
    case Pool::Medium: return cls == FamilyClass::Medium;
    case Pool::Large: return cls == FamilyClass::Large;
    case Pool::MediumOrLarge: return cls != FamilyClass::Small;
  }
  return false;
}

std::vector<SubsetMask> materialize(Pool pool, GroundSet ground) {
  std::vector<SubsetMask> out;
  for_each_in_family(ground, Family::PowerSet, [&](SubsetMask s) {
    if (in_pool(s, pool, ground)) out.push_back(s);
  });
  return out;
}

SubsetMask draw(Pool pool, GroundSet ground, CounterRng& rng) {
  const int n = ground.n();
  if (pool == Pool::Medium) {
    std::array<int, 64> order{};
    for (int i = 0; i < n; ++i) order[i] = i;
    std::uint64_t bits = 0;
    for (int i = 0; i < n / 2; ++i) {
      const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
      std::swap(order[i], order[j]);
      bits |= std::uint64_t{1} << order[i];
    }
    return SubsetMask{bits};
  }
  while (true) {
    const SubsetMask s{rng.next() & ground.full().bits};
    if (in_pool(s, pool, ground)) return s;
  }
}

bool some_subtuple(std::span<const SubsetMask> tuple, int arity, const std::function<bool(std::span<const SubsetMask>)>& fn) {
  const int size = static_cast<int>(tuple.size());
  std::array<SubsetMask, 8> pick{};
  std::function<bool(int, int)> rec = [&](int start, int depth) {
    if (depth == arity) return fn(std::span<const SubsetMask>(pick.data(), arity));
    for (int i = start; i <= size - (arity - depth); ++i) {
      pick[depth] = tuple[i];
      if (rec(i + 1, depth + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

struct Collector {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  // (ordering key, tuple); kept in key order, capped.
  std::vector<std::pair<std::pair<std::uint64_t, std::uint64_t>, std::vector<SubsetMask>>> found;

  void record(std::pair<std::uint64_t, std::uint64_t> key, std::span<const SubsetMask> tuple) {
    ++violations;
    if (found.size() < CheckReport::kViolationCap) found.push_back({key, {tuple.begin(), tuple.end()}});
  }
};

unsigned resolve_threads(unsigned threads) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  return threads;
}

CheckReport merge(int n, Statement s, CheckMode mode, std::vector<Collector>& parts) {
  CheckReport report;
  report.n = n;
  report.statement = s;
  report.mode = mode;
  std::vector<std::pair<std::pair<std::uint64_t, std::uint64_t>, std::vector<SubsetMask>>> all;
  for (auto& c : parts) {
    report.tuples_checked += c.checked;
    report.violation_count += c.violations;
    all.insert(all.end(), std::make_move_iterator(c.found.begin()), std::make_move_iterator(c.found.end()));
  }
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size() && i < CheckReport::kViolationCap; ++i) {
    report.violations.push_back(std::move(all[i].second));
  }
  return report;
}

void run_exhaustive(const Shape& shape, GroundSet ground, Statement s, unsigned worker, unsigned workers,
                    Collector& out) {
  std::vector<std::vector<SubsetMask>> pools;
  for (const auto& [pool, count] : shape.pools) pools.push_back(materialize(pool, ground));

  std::vector<SubsetMask> tuple;
  std::uint64_t outer = 0;
  std::uint64_t seq = 0;
  // Walk the pools one after another, choosing `count` members ascending in each.
  std::function<void(std::size_t, std::size_t, int)> rec = [&](std::size_t pool_idx, std::size_t start, int left) {
    if (left == 0) {
      if (pool_idx + 1 == pools.size()) {
        ++out.checked;
        if (is_violation(s, tuple, ground)) out.record({outer, seq}, tuple);
        ++seq;
        return;
      }
      rec(pool_idx + 1, 0, shape.pools[pool_idx + 1].second);
      return;
    }
    const auto& pool = pools[pool_idx];
    for (std::size_t i = start; i + static_cast<std::size_t>(left) <= pool.size(); ++i) {
      if (pool_idx == 0 && tuple.empty()) {
        if (i % workers != worker) continue;
        outer = i;
        seq = 0;
      }
      tuple.push_back(pool[i]);
      rec(pool_idx, i + 1, left - 1);
      tuple.pop_back();
    }
  };
  rec(0, 0, shape.pools.front().second);
}

void run_sampled(const Shape& shape, GroundSet ground, Statement s, CheckMode mode, unsigned worker, unsigned workers,
                 Collector& out) {
  std::vector<SubsetMask> tuple;
  for (std::uint64_t t = worker; t < mode.samples; t += workers) {
    CounterRng rng(mode.seed, t);
    tuple.clear();
    for (const auto& [pool, count] : shape.pools) {
      for (int c = 0; c < count; ++c) {
        SubsetMask pick = draw(pool, ground, rng);
        while (std::find(tuple.begin(), tuple.end(), pick) != tuple.end()) pick = draw(pool, ground, rng);
        tuple.push_back(pick);
      }
    }
    ++out.checked;
    if (is_violation(s, tuple, ground)) out.record({t, 0}, tuple);
  }
}

void check_preconditions(int n, Statement s, CheckMode mode) {
  const bool odd = s == Statement::OddC4;
  if (odd) {
    if (n < 5 || n % 2 == 0) throw std::invalid_argument("odd C4 lemma needs odd n >= 5");
  } else if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument(std::string(statement_label(s)) + " needs even n >= 4");
  }
  if (n > GroundSet::kMaxN) throw GroundTooLarge("n too large");
  if (mode.kind == CheckMode::Kind::Exhaustive && n > 8) {
    throw TooLargeForExhaustive("exhaustive checks are limited to n <= 8; use sampling");
  }
  if (mode.kind == CheckMode::Kind::Sample && mode.samples == 0) {
    throw std::invalid_argument("sampling needs a positive sample count");
  }
}

}  // namespace

bool is_violation(Statement s, std::span<const SubsetMask> tuple, GroundSet ground) {
  const Shape shape = shape_of(s);
  if (s == Statement::C4Claim) {
    return classify_quadruple(tuple[0], tuple[1], tuple[2], tuple[3], ground).tag == QuadClass::Tag::Neither;
  }
  if (shape.arity == 3) {
    return !some_subtuple(tuple, 3, [](std::span<const SubsetMask> t) { return has_berge_triangle(t[0], t[1], t[2]); });
  }
  return !some_subtuple(tuple, 4, [](std::span<const SubsetMask> t) {
    return has_berge_cycle4(t[0], t[1], t[2], t[3]).has_value();
  });
}

CheckReport check_statement(int n, Statement s, CheckMode mode, unsigned threads) {
  check_preconditions(n, s, mode);
  const GroundSet ground(n);
  const Shape shape = shape_of(s);
  const unsigned workers = resolve_threads(threads);
  std::vector<Collector> parts(workers);
  auto work = [&](unsigned w) {
    if (mode.kind == CheckMode::Kind::Exhaustive) {
      run_exhaustive(shape, ground, s, w, workers, parts[w]);
    } else {
      run_sampled(shape, ground, s, mode, w, workers, parts[w]);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  return merge(n, s, mode, parts);
}

std::vector<CheckReport> check_triangle_lemma(int n, CheckMode mode, unsigned threads) {
  std::vector<CheckReport> out;
  for (Statement s : {Statement::Triangle1, Statement::Triangle2, Statement::Triangle3, Statement::Triangle4}) {
    out.push_back(check_statement(n, s, mode, threads));
  }
  return out;
}

CheckReport check_c4_claim(int n, CheckMode mode, unsigned threads) {
  return check_statement(n, Statement::C4Claim, mode, threads);
}

std::vector<CheckReport> check_even_c4_lemma(int n, CheckMode mode, unsigned threads) {
  std::vector<CheckReport> out;
  for (Statement s : {Statement::EvenC4_1, Statement::EvenC4_2, Statement::EvenC4_3, Statement::EvenC4_4}) {
    out.push_back(check_statement(n, s, mode, threads));
  }
  return out;
}

CheckReport check_odd_c4_lemma(int n, CheckMode mode, unsigned threads) {
  return check_statement(n, Statement::OddC4, mode, threads);
}

}  // namespace bergepart
