#include <doctest.h>

#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "ikep/balancing.hpp"
#include "ikep/credit.hpp"
#include "ikep/error.hpp"

using namespace ikep;
using doctest::Approx;

namespace {

void check_values(const std::vector<double>& got, const std::vector<double>& want, double tol = 1e-9) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == Approx(want[i]).epsilon(tol));
}

std::vector<double> zero_sum(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> d(-4.0, 4.0);
  std::vector<double> c(n);
  for (double& x : c) x = d(rng);
  const double mean = std::accumulate(c.begin(), c.end(), 0.0) / n;
  for (double& x : c) x -= mean;
  return c;
}

}  // namespace

TEST_CASE("target allocations") {
  const CreditLedger c({-1.0 / 3, 2.0 / 3, -1.0 / 3}, 2);
  check_values(target_allocation(Allocation{{4.0 / 3, 1.0 / 3, 1.0 / 3}, 2}, c).values, {1, 1, 0});
  check_values(target_allocation(Allocation{{2, 0, 0}, 2}, c).values, {5.0 / 3, 2.0 / 3, -1.0 / 3});
  check_values(target_allocation(Allocation{{1.5, 0.5}, 2}, CreditLedger(2)).values, {1.5, 0.5});
  CHECK_THROWS_AS(target_allocation(Allocation{{1, 1}, 2}, c), ValidationError);
  CHECK_THROWS_AS(CreditLedger({1, 0}, 2), ValidationError);
  CHECK_THROWS_AS(CreditLedger({0, 0}, 0), ValidationError);
}

TEST_CASE("credit updates") {
  check_values(update_credits(std::vector<double>{1, 1, 0}, {1, 1, 0}).credits(), {0, 0, 0});
  check_values(update_credits(std::vector<double>{5.0 / 3, 2.0 / 3, -1.0 / 3}, {1, 1, 0}).credits(),
               {2.0 / 3, -1.0 / 3, -1.0 / 3});
  check_values(update_credits(std::vector<double>{2.0 / 3, 8.0 / 3, 2.0 / 3}, {1, 2, 1}).credits(),
               {-1.0 / 3, 2.0 / 3, -1.0 / 3});
  CHECK_THROWS_AS(update_credits(std::vector<double>{1, 1, 1}, {1, 1, 0}), ValidationError);

  CreditLedger ledger(3);
  CHECK(ledger.round() == 1);
  ledger.advance(std::vector<double>{2.0 / 3, 8.0 / 3, 2.0 / 3}, {1, 2, 1});
  CHECK(ledger.round() == 2);
  CHECK(ledger.magnitude() == Approx(4.0 / 3));
}

TEST_CASE("initial allocations on the walkthrough games") {
  const CharacteristicFunction v1 = generate_game(ikep::testing::fig2_round1());
  const CharacteristicFunction v2 = generate_game(ikep::testing::fig2_round2());
  const CreditLedger zero(3);
  const InitialAllocation a = initial_allocation(v1, Concept::kShapley, CreditRegime::kAdditive, zero);
  REQUIRE(a.y);
  check_values(a.y->values, {2.0 / 3, 8.0 / 3, 2.0 / 3});
  CHECK(a.y->total == 4);
  const InitialAllocation b = initial_allocation(v2, Concept::kNucleolus, CreditRegime::kAdditive, zero);
  check_values(b.y->values, {2, 0, 0});
  const InitialAllocation z = initial_allocation(v2, Concept::kBanzhaf, CreditRegime::kAdditive, zero);
  check_values(z.y->values, {6.0 / 5, 2.0 / 5, 2.0 / 5});
}

TEST_CASE("tau falls back to benefit and undefined values are flagged") {
  const CharacteristicFunction tri = generate_game(ikep::testing::triangle());
  const CreditLedger zero(3);
  const InitialAllocation t = initial_allocation(tri, Concept::kTau, CreditRegime::kAdditive, zero);
  CHECK(t.fallback);
  CHECK(t.used == Concept::kBenefit);
  CHECK(t.undefined);
  CHECK_FALSE(t.y);

  const CharacteristicFunction c5 = generate_game(ikep::testing::four_cycle());
  const InitialAllocation u = initial_allocation(c5, Concept::kTau, CreditRegime::kAdditive, CreditLedger(4));
  CHECK_FALSE(u.fallback);
  check_values(u.y->values, {1, 1, 1, 1});

  const CharacteristicFunction empty(3);
  for (Concept k : kAllConcepts) {
    const InitialAllocation e = initial_allocation(empty, k, CreditRegime::kCreditAdjusted, zero);
    REQUIRE(e.y);
    check_values(e.y->values, {0, 0, 0});
  }
}

TEST_CASE("credit regimes agree for covariant concepts") {
  std::mt19937_64 rng(51);
  const Concept covariant[] = {Concept::kShapley, Concept::kNucleolus, Concept::kTau, Concept::kBenefit};
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const CompatibilityGraph g = ikep::testing::random_graph(rng, n + 3 + static_cast<int>(rng() % 8), n, 0.3);
    const CharacteristicFunction v = generate_game(g);
    const CreditLedger c(zero_sum(rng, n), 2);
    for (Concept k : covariant) {
      const InitialAllocation a = initial_allocation(v, k, CreditRegime::kAdditive, c);
      const InitialAllocation b = initial_allocation(v, k, CreditRegime::kCreditAdjusted, c);
      CAPTURE(to_string(k));
      REQUIRE(a.y.has_value() == b.y.has_value());
      if (!a.y) continue;
      check_values(target_allocation(*a.y, c).values, target_allocation(*b.y, c).values, 1e-9);
    }
  }
}

TEST_CASE("regimes diverge for normalized banzhaf") {
  const CharacteristicFunction v2 = generate_game(ikep::testing::fig2_round2());
  const CreditLedger c({1, -1, 0}, 2);
  const InitialAllocation a = initial_allocation(v2, Concept::kBanzhaf, CreditRegime::kAdditive, c);
  const InitialAllocation b = initial_allocation(v2, Concept::kBanzhaf, CreditRegime::kCreditAdjusted, c);
  check_values(target_allocation(*a.y, c).values, {11.0 / 5, -3.0 / 5, 2.0 / 5});
  // psi(2v + c) = 2 psi(v) + c = (5/2, -1/2, 1/2), rescaled to sum 2.
  const std::vector<double> xb = target_allocation(*b.y, c).values;
  check_values(xb, {2, -2.0 / 5, 2.0 / 5});
  CHECK(xb[0] != Approx(11.0 / 5));
}

TEST_CASE("ledger identity over simulated rounds") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    CreditLedger ledger(n);
    std::vector<double> deviation_sum(n, 0.0);
    for (int h = 1; h <= 8; ++h) {
      const CompatibilityGraph g = ikep::testing::random_graph(rng, 14, n, 0.25);
      const CharacteristicFunction v = generate_game(g);
      const InitialAllocation y = initial_allocation(v, Concept::kShapley, CreditRegime::kAdditive, ledger);
      const Allocation x = target_allocation(*y.y, ledger);
      const BalancedMatching m = lexmin_matching(g, x.values);
      const MatchedCounts s = matched_counts(g, m.matching);
      for (int p = 0; p < n; ++p) deviation_sum[p] += y.y->values[p] - s[p];
      ledger.advance(x.values, s);
      CHECK(std::abs(std::accumulate(ledger.credits().begin(), ledger.credits().end(), 0.0)) < 1e-9);
      for (int p = 0; p < n; ++p) CHECK(ledger[p] == Approx(deviation_sum[p]).epsilon(1e-9));
    }
  }
}

TEST_CASE("round records round-trip through JSON lines") {
  RoundRecord r;
  r.round = 3;
  r.mu = 2;
  r.y = {2.0 / 3, 8.0 / 3, 2.0 / 3};
  r.c = {-1.0 / 3, 2.0 / 3, -1.0 / 3};
  r.x = {1.0 / 3, 10.0 / 3, 1.0 / 3};
  r.matching.edges = {{0, 1}, {2, 3}};
  r.s = {1, 2, 1};
  r.solution = "shapley";
  r.fallback = true;
  const std::string line = to_jsonl(r);
  CHECK(line.find('\n') == std::string::npos);
  CHECK(round_record_from_json(line) == r);
  CHECK_THROWS_AS(round_record_from_json("{\"round\": 1}"), ValidationError);
  CHECK_THROWS_AS(round_record_from_json("not json"), ValidationError);
}
