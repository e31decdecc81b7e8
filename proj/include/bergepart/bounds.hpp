#pragma once

// Exact integer evaluation of the known bounds on f(n, G), the least number of
// G-free classes in a partition of the power set of [n].
//
// Asymptotically, for G in {C_k, P_k, S_k} with k fixed,
//     2^n / (2(k-1)) * (1 - o(1))  <=  f(n, G)  <=  2^n / (2(k-1)) * (1 + o(1)).
// The upper half comes from the modular packing construction; the o(1) terms
// and its constant are reported here only as measured ratios, never as
// certified bounds.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bergepart/berge.hpp"

namespace bergepart {

using BigInt = boost::multiprecision::cpp_int;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnsupportedPattern : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Provenance {
  std::string label;
  std::string detail;
};

struct BoundsReport {
  BigInt lower = 1;
  BigInt upper = 1;
  std::optional<BigInt> exact;
  std::vector<Provenance> provenance;
};

[[nodiscard]] BigInt binomial(int n, int k);
[[nodiscard]] BigInt pow2(int n);
/// Ceiling of num/den for den > 0.
[[nodiscard]] BigInt ceil_div(const BigInt& num, const BigInt& den);

/// ceil((2^(n-1) - sum_{j<=k-2} C(n-1, j)) / (k-1)), for 2 <= k <= n.
[[nodiscard]] BigInt star_lower_bound(int n, int k);
/// The same bound from the degree count: ceil((n 2^(n-1) - sum_{j<k} j C(n,j)) / ((k-1) n)).
[[nodiscard]] BigInt star_lower_bound_degree_form(int n, int k);

/// 2^(n-2) for n >= 3 except f(5, C3) = 7; 1 when n <= 2.
[[nodiscard]] BigInt triangle_value(int n);

struct BoundsOptions {
  /// Add the measured part count of the modular packing construction.
  bool measure_construction = false;
};

[[nodiscard]] BoundsReport c4_bounds(int n, BoundsOptions options = {});

[[nodiscard]] BoundsReport known_bounds(int n, const PatternGraph& g, BoundsOptions options = {});

}  // namespace bergepart
