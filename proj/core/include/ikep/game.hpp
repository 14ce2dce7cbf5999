#pragma once

#include <span>
#include <vector>

#include "ikep/graph.hpp"

namespace ikep {

/// Coalition value table v: 2^N -> R indexed by bitmask. Values are stored as
/// reals so that credit-adjusted and accumulated games share the type.
class CharacteristicFunction {
 public:
  CharacteristicFunction() = default;
  /// The zero game on n players.
  explicit CharacteristicFunction(int n);
  /// Throws ValidationError unless values.size() == 2^n and values[0] == 0.
  CharacteristicFunction(int n, std::vector<double> values);

  int n() const { return n_; }
  Coalition grand() const { return grand_coalition(n_); }
  double operator[](Coalition s) const { return values_[s]; }
  double& operator[](Coalition s) { return values_[s]; }
  double value_of_grand() const { return values_[grand()]; }
  const std::vector<double>& values() const { return values_; }

  friend bool operator==(const CharacteristicFunction&, const CharacteristicFunction&) = default;

 private:
  int n_ = 0;
  std::vector<double> values_{0.0};
};

inline constexpr int kDefaultMaxCountries = 15;
inline constexpr int kHardMaxCountries = 20;

struct GameOptions {
  /// Refuse graphs with more countries than this; may be raised up to
  /// kHardMaxCountries.
  int max_countries = kDefaultMaxCountries;
};

/// v(S) = size of a maximum matching of the subgraph induced by V(S), for
/// every S. Coalitions are visited depth-first by adding countries in
/// increasing order; each child starts from its parent's maximum matching.
/// Throws CapacityError when the country count exceeds the cap.
CharacteristicFunction generate_game(const CompatibilityGraph& g, const GameOptions& options = {});

/// Supermodularity via the increment test
/// v(S+i) - v(S) <= v(S+i+j) - v(S+j) for all S and i, j outside S.
bool is_convex(const CharacteristicFunction& v, double tol = 1e-9);

/// v(S u T) >= v(S) + v(T) for all disjoint S, T.
bool is_superadditive(const CharacteristicFunction& v, double tol = 1e-9);

struct QuasibalanceProfile {
  std::vector<double> a;  // minimal rights, a_p = max over S containing p of R(S, p)
  std::vector<double> b;  // utopia payoffs, b_p = v(N) - v(N - p)
  bool quasibalanced = false;
};

/// Remainder R(S, p) = v(S) - sum of b_q over q in S, q != p.
double remainder(const CharacteristicFunction& v, std::span<const double> b, Coalition s, int p);

/// Quasibalanced iff a <= b and a(N) <= v(N) <= b(N), compared with `tol`.
QuasibalanceProfile quasibalance_profile(const CharacteristicFunction& v, double tol = 1e-9);
bool is_quasibalanced(const CharacteristicFunction& v, double tol = 1e-9);

/// v(N) - sum of singleton values.
double surplus(const CharacteristicFunction& v);
bool is_essential(const CharacteristicFunction& v, double tol = 1e-9);

/// v'(S) = v(S) + c(S). Throws ValidationError unless c has n entries summing
/// to zero within 1e-9.
CharacteristicFunction credit_adjusted_game(const CharacteristicFunction& v, std::span<const double> c);

/// v'(S) = v(S) + c(S) for any vector c (no zero-sum requirement).
CharacteristicFunction add_additive(const CharacteristicFunction& v, std::span<const double> c);

/// Coalition-wise sum. Throws ValidationError on an empty list or mismatched n.
CharacteristicFunction accumulate_games(std::span<const CharacteristicFunction> games);

/// Sum of x_p over p in S.
double coalition_sum(std::span<const double> x, Coalition s);

}  // namespace ikep
