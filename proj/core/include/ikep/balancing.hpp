#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ikep/graph.hpp"
#include "ikep/matching.hpp"

namespace ikep {

/// Per-country deviations |x_p - s_p(M)| and the same values sorted
/// non-increasingly.
struct DeviationVector {
  std::vector<double> by_country;
  std::vector<double> sorted;

  /// Largest deviation, 0 when there are no countries.
  double max() const { return sorted.empty() ? 0.0 : sorted.front(); }
};

/// Throws ValidationError when the lengths differ.
DeviationVector deviation_vector(std::span<const double> x, const MatchedCounts& s);

/// Lexicographic comparison of sorted deviation vectors with entries within
/// tol treated as equal: negative if a < b, 0 if equal, positive otherwise.
int lex_compare(const std::vector<double>& a, const std::vector<double>& b, double tol = 1e-9);

struct BalancedMatching {
  Matching matching;
  DeviationVector deviations;
  /// Largest deviation of the returned matching.
  double d1 = 0.0;
};

/// The deterministic maximum_matching output.
Matching arbitrary_maximum_matching(const CompatibilityGraph& g);

/// A maximum matching minimizing the largest deviation from x, by binary
/// search over the candidate values |x_p - k|, 0 <= k <= |V_p|.
BalancedMatching min_d1_matching(IntervalMatcher& matcher, std::span<const double> x);
BalancedMatching min_d1_matching(const CompatibilityGraph& g, std::span<const double> x);

enum class LexminMethod {
  /// Repeatedly shrink the largest unfinished deviation by one candidate step
  /// while capping the other unfinished countries at that deviation.
  kGreedy,
  /// Binary search for each level d_t, then an inclusion-minimal set of
  /// countries that must sit at d_t.
  kLevels,
};

/// A maximum matching whose sorted deviation vector is lexicographically
/// minimal.
BalancedMatching lexmin_matching(IntervalMatcher& matcher, std::span<const double> x,
                                 LexminMethod method = LexminMethod::kGreedy);
BalancedMatching lexmin_matching(const CompatibilityGraph& g, std::span<const double> x,
                                 LexminMethod method = LexminMethod::kGreedy);

}  // namespace ikep
