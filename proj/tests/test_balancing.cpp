#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "ikep/balancing.hpp"
#include "ikep/error.hpp"
#include "ikep/matching.hpp"

using namespace ikep;
using doctest::Approx;

namespace {

Matching ids(std::vector<Edge> e) { return Matching{std::move(e)}; }

void check_sorted(const DeviationVector& d, const std::vector<double>& want) {
  REQUIRE(d.sorted.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(d.sorted[i] == Approx(want[i]));
}

std::vector<double> random_target(std::mt19937_64& rng, const CompatibilityGraph& g) {
  std::vector<double> x(g.n_countries());
  for (int p = 0; p < g.n_countries(); ++p) {
    const int size = g.country_sizes()[p];
    switch (rng() % 3) {
      case 0: x[p] = std::uniform_real_distribution<double>(-1.0, size + 1.0)(rng); break;
      case 1: x[p] = 0.5 * static_cast<double>(rng() % (2 * size + 3)) - 0.5; break;
      default: x[p] = static_cast<double>(rng() % (size + 1)); break;
    }
  }
  return x;
}

}  // namespace

TEST_CASE("deviation vectors") {
  check_sorted(deviation_vector(std::vector<double>{1, 1, 0}, {1, 1, 0}), {0, 0, 0});
  const DeviationVector d = deviation_vector(std::vector<double>{5.0 / 3, 2.0 / 3, -1.0 / 3}, {1, 1, 0});
  check_sorted(d, {2.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(d.by_country[0] == Approx(2.0 / 3));
  CHECK(d.max() == Approx(2.0 / 3));
  check_sorted(deviation_vector(std::vector<double>{3, 0, 2}, {3, 0, 2}), {0, 0, 0});
  CHECK_THROWS_AS(deviation_vector(std::vector<double>{1}, {1, 2}), ValidationError);
}

TEST_CASE("lexicographic comparison") {
  CHECK(lex_compare({1, 0.5, 0.3}, {1, 0.7, 0.5}) < 0);
  CHECK(lex_compare({1, 0.7}, {1, 0.5}) > 0);
  CHECK(lex_compare({1, 0.5}, {1, 0.5 + 1e-12}) == 0);
}

TEST_CASE("walkthrough selections") {
  const CompatibilityGraph r2 = ikep::testing::fig2_round2();
  const std::vector<double> exact{1, 1, 0};
  const BalancedMatching a = min_d1_matching(r2, exact);
  CHECK(a.matching == ids({{0, 1}}));
  CHECK(a.d1 == Approx(0));

  const std::vector<double> shifted{5.0 / 3, 2.0 / 3, -1.0 / 3};
  const BalancedMatching b = min_d1_matching(r2, shifted);
  CHECK(b.matching == ids({{0, 1}}));
  CHECK(b.d1 == Approx(2.0 / 3));

  for (LexminMethod m : {LexminMethod::kGreedy, LexminMethod::kLevels}) {
    const BalancedMatching c = lexmin_matching(r2, std::vector<double>{0, 0.5, 0.3}, m);
    CHECK(c.matching == ids({{0, 1}}));
    check_sorted(c.deviations, {1, 0.5, 0.3});
    const BalancedMatching d = lexmin_matching(r2, exact, m);
    CHECK(d.matching == ids({{0, 1}}));
    check_sorted(d.deviations, {0, 0, 0});
    const CompatibilityGraph r1 = ikep::testing::fig2_round1();
    CHECK(lexmin_matching(r1, std::vector<double>{3, -2, 7}, m).matching == ids({{0, 1}, {2, 3}}));
  }
}

TEST_CASE("arbitrary maximum matching") {
  CHECK(arbitrary_maximum_matching(ikep::testing::fig2_round1()) == ids({{0, 1}, {2, 3}}));
  const CompatibilityGraph edgeless(2, {ikep::testing::vtx(0, 0), ikep::testing::vtx(1, 1)}, {});
  CHECK(arbitrary_maximum_matching(edgeless).empty());
  std::mt19937_64 rng(40);
  for (int t = 0; t < 20; ++t) {
    const CompatibilityGraph g = ikep::testing::random_graph(rng, 12, 3, 0.3);
    CHECK(arbitrary_maximum_matching(g) == maximum_matching(g));
  }
}

TEST_CASE("selections agree with exhaustive enumeration") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const int nv = 2 + static_cast<int>(rng() % 13);
    const int n = 1 + static_cast<int>(rng() % 5);
    const CompatibilityGraph g = ikep::testing::random_graph(rng, nv, n, 0.1 + 0.4 * (rng() % 100) / 100.0);
    const std::vector<double> x = random_target(rng, g);
    std::vector<double> best;
    double best_d1 = 1e18;
    for (const Matching& m : enumerate_maximum_matchings(g)) {
      const DeviationVector d = deviation_vector(x, matched_counts(g, m));
      if (best.empty() || lex_compare(d.sorted, best) < 0) best = d.sorted;
      best_d1 = std::min(best_d1, d.max());
    }
    const int mu = maximum_matching_size(g);
    CAPTURE(trial);

    const BalancedMatching d1 = min_d1_matching(g, x);
    CHECK(static_cast<int>(d1.matching.size()) == mu);
    CHECK(d1.d1 == Approx(best_d1));

    for (LexminMethod m : {LexminMethod::kGreedy, LexminMethod::kLevels}) {
      const BalancedMatching lm = lexmin_matching(g, x, m);
      validate_matching(g, lm.matching);
      CHECK(static_cast<int>(lm.matching.size()) == mu);
      CHECK(lex_compare(lm.deviations.sorted, best) == 0);
      CHECK(lex_compare(lm.deviations.sorted, d1.deviations.sorted) <= 0);
      CHECK(lm.d1 == Approx(d1.d1));
    }
  }
}

TEST_CASE("greedy and level variants agree on larger graphs") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const CompatibilityGraph g = ikep::testing::random_graph(rng, 60, n, 0.04);
    std::vector<double> x(n);
    const int mu = maximum_matching_size(g);
    for (double& v : x) v = std::uniform_real_distribution<double>(0.0, 4.0 * mu / n)(rng);
    IntervalMatcher matcher(g);
    const BalancedMatching a = lexmin_matching(matcher, x, LexminMethod::kGreedy);
    const BalancedMatching b = lexmin_matching(matcher, x, LexminMethod::kLevels);
    CHECK(lex_compare(a.deviations.sorted, b.deviations.sorted) == 0);
    CHECK(static_cast<int>(a.matching.size()) == mu);
    const BalancedMatching w = lexmin_matching(g, x, LexminMethod::kGreedy);
    CHECK(w.matching == a.matching);
  }
}
