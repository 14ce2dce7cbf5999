#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ikep/game.hpp"
#include "ikep/graph.hpp"
#include "ikep/solutions.hpp"

namespace ikep {

enum class CreditRegime {
  /// Concept applied to v, scaled by two; credits added to form the target.
  kAdditive,
  /// Concept applied to 2v + c and used directly as the target.
  kCreditAdjusted,
};

std::string_view to_string(CreditRegime r);
std::optional<CreditRegime> parse_credit_regime(std::string_view s);

/// Credits c^h carried into round h. Sums to zero.
class CreditLedger {
 public:
  /// Zero credits at round 1.
  explicit CreditLedger(int n);
  /// Throws ValidationError unless round >= 1 and the credits sum to zero.
  CreditLedger(std::vector<double> credits, int round);

  int n() const { return static_cast<int>(c_.size()); }
  int round() const { return round_; }
  const std::vector<double>& credits() const { return c_; }
  double operator[](int p) const { return c_[p]; }

  /// Sum of |c_p|.
  double magnitude() const;

  /// Replaces the credits by x - s and moves to the next round.
  void advance(std::span<const double> x, const MatchedCounts& s);

 private:
  std::vector<double> c_;
  int round_ = 1;
};

/// x = y + c. Throws ValidationError on a length mismatch or a ledger whose
/// credits do not sum to zero.
Allocation target_allocation(const Allocation& y, const CreditLedger& c);

/// c' = x - s for round `next_round`. Throws ValidationError when sum(x) and
/// sum(s) differ by more than 1e-9 (relative), which signals a matching that
/// is not maximum.
CreditLedger update_credits(std::span<const double> x, const MatchedCounts& s, int next_round = 2);

struct InitialAllocation {
  /// y in transplant units (concept value times two). In the credit-adjusted
  /// regime y = x - c so that the target is still y + c. Empty when the
  /// concept is undefined on the game.
  std::optional<Allocation> y;
  /// Concept actually evaluated (benefit when tau fell back).
  Concept used = Concept::kShapley;
  bool fallback = false;
  bool undefined = false;
};

/// y for one round. tau falls back to benefit on non-quasibalanced games.
/// A game with v(N) = 0 yields y = 0 for every concept.
InitialAllocation initial_allocation(const CharacteristicFunction& v, Concept solution, CreditRegime regime,
                                     const CreditLedger& c);

/// Audit row for one round of one run.
struct RoundRecord {
  int round = 1;
  int mu = 0;
  std::vector<double> y;
  std::vector<double> c;
  std::vector<double> x;
  Matching matching;
  MatchedCounts s;
  std::string solution;
  bool fallback = false;
  bool undefined = false;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

/// One JSON object on a single line, no trailing newline.
std::string to_jsonl(const RoundRecord& r);
/// Throws ValidationError on malformed input.
RoundRecord round_record_from_json(std::string_view line);

}  // namespace ikep
