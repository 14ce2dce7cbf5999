#pragma once

// Randomized agreement checks between the production algorithms and the
// brute-force references in oracle.hpp. Used by `ikep verify` and the
// acceptance suite.

#include <cstdint>
#include <string>
#include <vector>

#include "ikep/game.hpp"
#include "ikep/graph.hpp"
#include "ikep/random.hpp"

namespace ikep::verify {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int mismatches = 0;
  std::string first_failure;  // empty when all cases agree

  bool passed() const { return cases > 0 && mismatches == 0; }
};

/// Erdos-Renyi graph with uniform country labels; every country gets at
/// least one vertex when n_vertices >= n_countries.
CompatibilityGraph random_partitioned_graph(SplitMix64& rng, int n_vertices, int n_countries, double p);

/// Real targets mixing uniform reals, half-integers and integers in a range
/// slightly wider than [0, |V_p|].
std::vector<double> random_target(SplitMix64& rng, const CompatibilityGraph& g);

/// A random imputation of v: a simplex point, a simplex vertex, or a small
/// transfer away from `near` that stays individually rational.
std::vector<double> random_imputation(SplitMix64& rng, const CharacteristicFunction& v,
                                      const std::vector<double>& near);

/// lexmin_matching (both variants) and min_d1_matching against exhaustive
/// enumeration of maximum matchings; graphs have at most max_vertices.
SuiteResult selections(std::uint64_t seed, int trials, int max_vertices = 14);

/// Interval-feasibility verdicts of both gadgets against brute force.
SuiteResult intervals(std::uint64_t seed, int trials, int max_vertices = 14);

/// Nucleolus of random matching games with 2..max_n players: imputation,
/// core membership when the core is nonempty, and lexicographic dominance
/// over `samples` random imputations.
SuiteResult nucleolus(std::uint64_t seed, int games, int samples, int max_n = 8);

/// Shapley value against the permutation average, and generated games
/// against per-coalition exhaustive search.
SuiteResult concepts(std::uint64_t seed, int games, int max_n = 6);

}  // namespace ikep::verify
