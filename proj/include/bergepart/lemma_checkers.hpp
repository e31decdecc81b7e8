#pragma once

// Brute-force and sampled verification of the medium/large set lemmas behind
// the triangle and C4 lower bounds. Medium sets have size exactly n/2, large
// sets size at least floor(n/2)+1.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bergepart/setcore.hpp"

namespace bergepart {

class TooLargeForExhaustive : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Statement {
  Triangle1,  // five medium sets: some three form a triangle
  Triangle2,  // three medium + one large: some three form a triangle
  Triangle3,  // one medium + two large form a triangle
  Triangle4,  // three large form a triangle
  C4Claim,    // four medium/large sets: C4 or Ψ-configuration
  EvenC4_1,   // five medium: some four form a C4
  EvenC4_2,   // four medium + one large: some four form a C4
  EvenC4_3,   // two medium + two large form a C4
  EvenC4_4,   // one medium + three large form a C4
  OddC4,      // four large sets (odd n) form a C4
};

[[nodiscard]] std::string_view statement_label(Statement s);

struct CheckMode {
  enum class Kind { Exhaustive, Sample };
  Kind kind = Kind::Exhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static CheckMode exhaustive() { return {}; }
  static CheckMode sample(std::uint64_t count, std::uint64_t seed) { return {Kind::Sample, count, seed}; }
};

struct CheckReport {
  static constexpr std::size_t kViolationCap = 100;

  int n = 0;
  Statement statement = Statement::Triangle1;
  CheckMode mode;
  std::uint64_t tuples_checked = 0;
  std::uint64_t violation_count = 0;
  /// First violations in enumeration (or sample) order, capped.
  std::vector<std::vector<SubsetMask>> violations;
};

/// True iff the tuple breaks the statement. Tuples list medium sets first.
[[nodiscard]] bool is_violation(Statement s, std::span<const SubsetMask> tuple, GroundSet ground);

/// Statements 1-4 in order. Even n >= 4; exhaustive needs n <= 8.
/// threads = 0 uses the hardware concurrency.
[[nodiscard]] std::vector<CheckReport> check_triangle_lemma(int n, CheckMode mode, unsigned threads = 0);

[[nodiscard]] CheckReport check_c4_claim(int n, CheckMode mode, unsigned threads = 0);

[[nodiscard]] std::vector<CheckReport> check_even_c4_lemma(int n, CheckMode mode, unsigned threads = 0);

/// Odd n >= 5.
[[nodiscard]] CheckReport check_odd_c4_lemma(int n, CheckMode mode, unsigned threads = 0);

/// Runs one statement; used by the lemma-level entry points.
[[nodiscard]] CheckReport check_statement(int n, Statement s, CheckMode mode, unsigned threads = 0);

/// Counter-based generator: stream `stream` of seed `seed` is the same on
/// every platform and independent of how streams are spread over workers.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next();
  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

}  // namespace bergepart
