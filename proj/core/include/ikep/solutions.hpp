#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ikep/game.hpp"

namespace ikep {

/// A length-n vector together with the total it is declared to sum to.
struct Allocation {
  std::vector<double> values;
  double total = 0.0;

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int p) const { return values[p]; }
  Allocation scaled(double factor) const;
  /// Throws ValidationError unless the values sum to total within tol.
  void check_efficiency(double tol = 1e-9) const;
};

enum class Concept { kShapley, kNucleolus, kBanzhaf, kTau, kBenefit, kContribution };

inline constexpr Concept kAllConcepts[] = {Concept::kShapley, Concept::kNucleolus, Concept::kBanzhaf,
                                           Concept::kTau,     Concept::kBenefit,   Concept::kContribution};

std::string_view to_string(Concept c);
std::optional<Concept> parse_concept(std::string_view s);

Allocation shapley(const CharacteristicFunction& v);

struct BanzhafResult {
  std::vector<double> unnormalized;
  /// Rescaled to sum to v(N); nullopt when the unnormalized values sum to 0.
  std::optional<Allocation> normalized;
};
BanzhafResult banzhaf(const CharacteristicFunction& v);

struct TauResult {
  /// nullopt when the game is not quasibalanced.
  std::optional<Allocation> value;
  QuasibalanceProfile profile;
  double gamma = 0.0;
};
TauResult tau(const CharacteristicFunction& v, double tol = 1e-9);

/// v({p}) + alpha_p * surplus with alpha proportional to
/// v(N) - v(N - p) - v({p}); nullopt when those sum to zero while the
/// surplus does not. A zero-surplus game yields the singleton values.
std::optional<Allocation> benefit(const CharacteristicFunction& v, double tol = 1e-9);

/// v({p}) + alpha_p * surplus with alpha proportional to v(N) - v(N - p);
/// nullopt when those sum to zero while the surplus does not.
std::optional<Allocation> contribution(const CharacteristicFunction& v, double tol = 1e-9);

/// Lexicographic maximizer of the sorted excess vector over the imputations.
/// Throws ValidationError when the imputation set is empty and
/// DegeneracyError if the LP chain fails.
Allocation nucleolus(const CharacteristicFunction& v);

/// The concept's value on v with no fallback; nullopt where undefined.
std::optional<Allocation> evaluate_concept(Concept c, const CharacteristicFunction& v);

/// min over non-empty proper coalitions S of x(S) - v(S). For n = 1 there is
/// no such coalition and the result is +infinity.
double min_excess(const CharacteristicFunction& v, std::span<const double> x);

/// Optimal value of max eps s.t. x(S) - v(S) >= eps, x(N) = v(N).
double least_core_value(const CharacteristicFunction& v);
bool core_nonempty(const CharacteristicFunction& v, double tol = 1e-9);

/// The 2^n - 2 excesses x(S) - v(S), sorted non-decreasingly. Throws
/// ValidationError for n < 2.
std::vector<double> excess_vector(const CharacteristicFunction& v, std::span<const double> x);

}  // namespace ikep
