#include "ikep/credit.hpp"

#include <cmath>
#include <numeric>

#include <json.hpp>

#include "ikep/error.hpp"

namespace ikep {

namespace {

constexpr double kSumTol = 1e-9;

double sum_of(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double scale_of(std::span<const double> v) {
  double s = 1.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace

std::string_view to_string(CreditRegime r) {
  return r == CreditRegime::kAdditive ? "additive-credits" : "credit-adjusted-game";
}

std::optional<CreditRegime> parse_credit_regime(std::string_view s) {
  if (s == "additive-credits") return CreditRegime::kAdditive;
  if (s == "credit-adjusted-game") return CreditRegime::kCreditAdjusted;
  return std::nullopt;
}

CreditLedger::CreditLedger(int n) : c_(n, 0.0) {}

CreditLedger::CreditLedger(std::vector<double> credits, int round) : c_(std::move(credits)), round_(round) {
  if (round_ < 1) throw ValidationError("ledger round must be at least 1");
  if (std::abs(sum_of(c_)) > kSumTol * scale_of(c_)) {
    throw ValidationError("credits sum to " + std::to_string(sum_of(c_)) + " instead of 0");
  }
}

double CreditLedger::magnitude() const {
  double m = 0.0;
  for (double x : c_) m += std::abs(x);
  return m;
}

void CreditLedger::advance(std::span<const double> x, const MatchedCounts& s) {
  *this = update_credits(x, s, round_ + 1);
}

Allocation target_allocation(const Allocation& y, const CreditLedger& c) {
  if (y.size() != c.n()) {
    throw ValidationError("allocation has " + std::to_string(y.size()) + " entries but the ledger has " +
                          std::to_string(c.n()));
  }
  if (std::abs(sum_of(c.credits())) > kSumTol * scale_of(c.credits())) {
    throw ValidationError("credits do not sum to zero");
  }
  Allocation x = y;
  for (int p = 0; p < y.size(); ++p) x.values[p] += c[p];
  return x;
}

CreditLedger update_credits(std::span<const double> x, const MatchedCounts& s, int next_round) {
  if (x.size() != s.size()) {
    throw ValidationError("target has " + std::to_string(x.size()) + " entries but matched counts have " +
                          std::to_string(s.size()));
  }
  const double sx = sum_of(x);
  const double ss = std::accumulate(s.begin(), s.end(), 0.0);
  if (std::abs(sx - ss) > kSumTol * std::max(1.0, std::abs(ss))) {
    throw ValidationError("target sums to " + std::to_string(sx) + " but the matching covers " +
                          std::to_string(ss) + " patients");
  }
  std::vector<double> c(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) c[p] = x[p] - s[p];
  // Remove rounding drift so the ledger invariant holds exactly enough.
  const double drift = sum_of(c) / static_cast<double>(std::max<std::size_t>(c.size(), 1));
  for (double& v : c) v -= drift;
  return CreditLedger(std::move(c), next_round);
}

InitialAllocation initial_allocation(const CharacteristicFunction& v, Concept solution, CreditRegime regime,
                                     const CreditLedger& c) {
  const int n = v.n();
  if (c.n() != n) throw ValidationError("ledger size does not match the game");
  InitialAllocation out;
  out.used = solution;
  if (v.value_of_grand() == 0.0) {
    out.y = Allocation{std::vector<double>(n, 0.0), 0.0};
    return out;
  }
  CharacteristicFunction game(n);
  for (Coalition s = 1; s <= v.grand(); ++s) game[s] = 2.0 * v[s];
  if (regime == CreditRegime::kCreditAdjusted) game = credit_adjusted_game(game, c.credits());

  std::optional<Allocation> value;
  if (solution == Concept::kTau) {
    value = tau(game).value;
    if (!value) {
      out.fallback = true;
      out.used = Concept::kBenefit;
      value = benefit(game);
    }
  } else {
    value = evaluate_concept(solution, game);
  }
  if (!value) {
    out.undefined = true;
    return out;
  }
  if (regime == CreditRegime::kCreditAdjusted) {
    for (int p = 0; p < n; ++p) value->values[p] -= c[p];
    value->total = 2.0 * v.value_of_grand();
  }
  out.y = std::move(value);
  return out;
}

std::string to_jsonl(const RoundRecord& r) {
  nlohmann::ordered_json j;
  j["round"] = r.round;
  j["mu"] = r.mu;
  j["solution"] = r.solution;
  j["fallback"] = r.fallback;
  j["undefined"] = r.undefined;
  j["y"] = r.y;
  j["c"] = r.c;
  j["x"] = r.x;
  j["s"] = r.s;
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const Edge& e : r.matching.edges) edges.push_back({e.u, e.v});
  j["matching"] = std::move(edges);
  return j.dump();
}

RoundRecord round_record_from_json(std::string_view line) {
  try {
    const nlohmann::json j = nlohmann::json::parse(line);
    RoundRecord r;
    r.round = j.at("round").get<int>();
    r.mu = j.at("mu").get<int>();
    r.solution = j.at("solution").get<std::string>();
    r.fallback = j.at("fallback").get<bool>();
    r.undefined = j.at("undefined").get<bool>();
    r.y = j.at("y").get<std::vector<double>>();
    r.c = j.at("c").get<std::vector<double>>();
    r.x = j.at("x").get<std::vector<double>>();
    r.s = j.at("s").get<std::vector<int>>();
    for (const auto& e : j.at("matching")) r.matching.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed round record: ") + e.what());
  }
}

}  // namespace ikep
