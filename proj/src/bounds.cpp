#include "bergepart/bounds.hpp"

#include <algorithm>
#include <sstream>

#include "bergepart/constructors.hpp"

namespace bergepart {

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

BigInt pow2(int n) {
  BigInt out = 1;
  out <<= n;
  return out;
}

BigInt ceil_div(const BigInt& num, const BigInt& den) {
  if (den <= 0) throw DomainError("ceil_div needs a positive denominator");
  BigInt q = num / den;
  if (q * den < num) ++q;
  return q;
}

namespace {

void check_star_args(int n, int k) {
  if (k < 2 || k > n) {
    throw DomainError("star bound needs 2 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
}

std::string str(const BigInt& v) { return v.str(); }

void add_lower(BoundsReport& r, const BigInt& value, std::string label, std::string detail) {
  r.lower = std::max(r.lower, value);
  r.provenance.push_back({std::move(label), std::move(detail) + " => lower " + str(value)});
}

void add_upper(BoundsReport& r, const BigInt& value, std::string label, std::string detail) {
  r.upper = std::min(r.upper, value);
  r.provenance.push_back({std::move(label), std::move(detail) + " => upper " + str(value)});
}

void add_exact(BoundsReport& r, const BigInt& value, std::string label, std::string detail) {
  r.lower = r.upper = value;
  r.exact = value;
  r.provenance.push_back({std::move(label), std::move(detail) + " => exact " + str(value)});
}

void add_measured_packing(BoundsReport& r, int n, int k) {
  if (k < 2 || n < 2 * (k - 1) || n > 62) return;
  const auto stats = modular_packing_stats(GroundSet(n), k);
  std::ostringstream detail;
  detail << "modular packing with k=" << k << ": " << stats.full_parts << " full parts, " << stats.leftover_parts
         << " leftover parts, measured ratio to 2^n/(2(k-1)) = " << stats.ratio;
  add_upper(r, BigInt(stats.total_parts), "construction: modular packing (measured)", detail.str());
}

// Every class may hold k-1 sets of size >= 2 plus any number of empty and
// singleton sets.
BigInt trivial_upper(int n, int k) {
  const BigInt hostable = pow2(n) - n - 1;
  return std::max(BigInt(1), ceil_div(hostable, k - 1));
}

}  // namespace

BigInt star_lower_bound(int n, int k) {
  check_star_args(n, k);
  BigInt small = 0;
  for (int j = 0; j <= k - 2; ++j) small += binomial(n - 1, j);
  return ceil_div(pow2(n - 1) - small, k - 1);
}

BigInt star_lower_bound_degree_form(int n, int k) {
  check_star_args(n, k);
  BigInt degrees = BigInt(n) * pow2(n - 1);
  for (int j = 1; j <= k - 1; ++j) degrees -= BigInt(j) * binomial(n, j);
  return ceil_div(degrees, BigInt(k - 1) * n);
}

BigInt triangle_value(int n) {
  if (n < 1) throw DomainError("triangle_value needs n >= 1");
  if (n <= 2) return 1;
  if (n == 5) return 7;
  return pow2(n - 2);
}

BoundsReport c4_bounds(int n, BoundsOptions options) {
  if (n < 4) throw DomainError("c4_bounds needs n >= 4");
  BoundsReport r;
  r.lower = 1;
  r.upper = pow2(n - 2);
  r.provenance.push_back({"proposition: quadruple partition", "f(n,C4) <= 2^(n-2) => upper " + str(r.upper)});
  if (n % 2 == 0 && n >= 26) {
    // (2^n + C(n,n/2)/3) / 6 with the rational kept exact.
    const BigInt value = ceil_div(3 * pow2(n) + binomial(n, n / 2), 18);
    add_lower(r, value, "theorem: C4 lower bound, even n >= 26", "ceil((2^n + C(n,n/2)/3)/6)");
  } else if (n % 2 == 1 && n >= 27) {
    add_lower(r, ceil_div(pow2(n - 1), 3), "theorem: C4 lower bound, odd n >= 27", "ceil(2^(n-1)/3)");
  } else {
    r.provenance.push_back({"lemma thresholds not met", "C4 lemmas need even n >= 26 or odd n >= 27 => lower 1"});
  }
  if (options.measure_construction) add_measured_packing(r, n, 4);
  return r;
}

BoundsReport known_bounds(int n, const PatternGraph& g, BoundsOptions options) {
  if (!g.connected()) throw UnsupportedPattern("bounds are only known for connected patterns");
  if (n < 1) throw DomainError("n must be positive");
  const int k = g.edge_count();

  BoundsReport r;
  if (n < g.vertex_count()) {
    add_exact(r, 1, "trivial: too few elements", "a Berge copy needs " + std::to_string(g.vertex_count()) +
                                                      " distinct elements");
    return r;
  }
  if (k == 1) {
    // Every set of size >= 2 is a copy of a single edge on its own.
    add_exact(r, pow2(n) - n - 1, "trivial: single edge", "each set of size >= 2 needs its own class");
    return r;
  }

  r.lower = 1;
  r.upper = trivial_upper(n, k);
  r.provenance.push_back({"trivial: chunks of k-1 sets", "ceil((2^n - n - 1)/(k-1)) => upper " + str(r.upper)});

  const bool cycle = g.kind() == PatternGraph::Kind::Cycle;
  const bool star = g.kind() == PatternGraph::Kind::Star;

  if (cycle && k == 3) {
    add_exact(r, triangle_value(n), "theorem: triangle value", "f(n,C3) = 2^(n-2) for n >= 3, n != 5; f(5,C3) = 7");
    return r;
  }
  if (cycle && k == 4) {
    const auto c4 = c4_bounds(n, options);
    r.lower = std::max(r.lower, c4.lower);
    r.upper = std::min(r.upper, c4.upper);
    r.provenance.insert(r.provenance.end(), c4.provenance.begin(), c4.provenance.end());
  } else {
    if (star && k <= n) {
      add_lower(r, star_lower_bound(n, k), "proposition: star degree count",
                "ceil((2^(n-1) - sum_{j<=k-2} C(n-1,j)) / (k-1))");
    }
    if (star && k == 3) {
      add_upper(r, pow2(n - 2), "proposition: quadruple partition", "f(n,S3) <= 2^(n-2)");
      if (n == 6) add_upper(r, 15, "construction: claw design on [6]", "15 claw-free classes");
      if (n == 9) add_upper(r, 126, "construction: claw design on [9]", "126 claw-free classes");
    }
    if (options.measure_construction) add_measured_packing(r, n, k);
  }
  if (r.lower == r.upper) r.exact = r.lower;
  return r;
}

}  // namespace bergepart
