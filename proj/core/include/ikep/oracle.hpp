#pragma once

// Brute-force references used by tests and `ikep verify`. Everything here is
// exponential and written for clarity, not speed.

#include <cstdint>
#include <optional>
#include <vector>

#include "ikep/game.hpp"
#include "ikep/graph.hpp"
#include "ikep/lp.hpp"
#include "ikep/matching.hpp"

namespace ikep::oracle {

/// Every matching of g (all sizes), as sets of vertex indices pairs.
std::vector<std::vector<std::pair<int, int>>> all_matchings(const CompatibilityGraph& g);

/// Maximum matchings of g computed from all_matchings.
std::vector<MatchedCounts> maximum_matching_profiles(const CompatibilityGraph& g);
int maximum_matching_size(const CompatibilityGraph& g);

bool interval_feasible(const CompatibilityGraph& g, const std::vector<int>& lower,
                       const std::vector<int>& upper);

/// Maximum weight of a perfect matching, or nullopt if none exists.
std::optional<std::int64_t> max_weight_perfect_matching_weight(const WeightedGraph& g);

/// Best objective over all basic feasible points (every choice of n tight
/// rows or bounds), or nullopt if there is none. Only meaningful for LPs
/// whose feasible region is bounded.
std::optional<double> lp_vertex_optimum(const LinearProgram& lp, double tol = 1e-9);

/// Feasibility of the LP's constraints by Fourier-Motzkin elimination.
bool fourier_motzkin_feasible(const LinearProgram& lp, double tol = 1e-9);

/// Convexity by the definition v(S u T) + v(S n T) >= v(S) + v(T).
bool is_convex_definitional(const CharacteristicFunction& v, double tol = 1e-9);

/// v(S) computed independently as the maximum matching size of each induced
/// subgraph by exhaustive search.
CharacteristicFunction brute_force_game(const CompatibilityGraph& g);

/// Shapley value as the average marginal vector over all n! orders.
std::vector<double> shapley_by_permutations(const CharacteristicFunction& v);

/// Unsorted excesses x(S) - v(S) over non-empty proper coalitions.
std::vector<double> excesses(const CharacteristicFunction& v, const std::vector<double>& x);

/// Sorts both excess vectors and compares them lexicographically; entries
/// within tol count as equal.
bool lex_at_least(std::vector<double> a, std::vector<double> b, double tol = 1e-7);

}  // namespace ikep::oracle
