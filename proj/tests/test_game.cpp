#include <doctest.h>

#include "fixtures.hpp"
#include "ikep/error.hpp"
#include "ikep/game.hpp"
#include "ikep/matching.hpp"
#include "ikep/oracle.hpp"

using namespace ikep;
using doctest::Approx;

namespace {

CharacteristicFunction random_game(std::mt19937_64& rng, int n) {
  std::vector<double> values(std::size_t{1} << n, 0.0);
  std::uniform_int_distribution<int> d(0, 6);
  for (std::size_t s = 1; s < values.size(); ++s) values[s] = d(rng);
  return CharacteristicFunction(n, values);
}

}  // namespace

TEST_CASE("generated games on the walkthrough graphs") {
  const CharacteristicFunction v1 = generate_game(ikep::testing::fig2_round1());
  CHECK(v1[0b001] == 0);
  CHECK(v1[0b010] == 1);
  CHECK(v1[0b100] == 0);
  CHECK(v1[0b011] == 1);
  CHECK(v1[0b101] == 0);
  CHECK(v1[0b110] == 1);
  CHECK(v1[0b111] == 2);

  const CharacteristicFunction v2 = generate_game(ikep::testing::fig2_round2());
  CHECK(v2.values() == std::vector<double>{0, 0, 0, 1, 0, 1, 0, 1});

  const CompatibilityGraph edgeless(3, {ikep::testing::vtx(0, 0), ikep::testing::vtx(1, 2)}, {});
  const CharacteristicFunction v0 = generate_game(edgeless);
  for (double x : v0.values()) CHECK(x == 0);
}

TEST_CASE("generated games match exhaustive search and are superadditive and monotone") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const CompatibilityGraph g = ikep::testing::random_graph(rng, 4 + static_cast<int>(rng() % 10), n, 0.3);
    const CharacteristicFunction v = generate_game(g);
    CHECK(v == oracle::brute_force_game(g));
    CHECK(v.value_of_grand() == maximum_matching_size(g));
    CHECK(is_superadditive(v));
    for (Coalition s = 0; s <= v.grand(); ++s) {
      for (int p = 0; p < n; ++p) CHECK(v[s] <= v[s | (Coalition{1} << p)]);
    }
  }
}

TEST_CASE("larger generated games agree with per-coalition matchings") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const CompatibilityGraph g = ikep::testing::random_graph(rng, 120, 8, 0.05);
    const CharacteristicFunction v = generate_game(g);
    for (Coalition s = 1; s <= v.grand(); ++s) {
      CHECK(v[s] == maximum_matching_size(induced_subgraph(g, s)));
    }
    CHECK(is_superadditive(v));
  }
}

TEST_CASE("country cap") {
  std::mt19937_64 rng(23);
  const CompatibilityGraph g = ikep::testing::random_graph(rng, 20, 16, 0.1);
  CHECK_THROWS_AS(generate_game(g), CapacityError);
  CHECK_THROWS_WITH_AS(generate_game(g), doctest::Contains("2^16"), CapacityError);
  CHECK_THROWS_AS(generate_game(g, GameOptions{21}), CapacityError);
  CHECK(generate_game(g, GameOptions{16}).n() == 16);
}

TEST_CASE("convexity") {
  CHECK_FALSE(is_convex(generate_game(ikep::testing::three_path())));
  CHECK_FALSE(is_convex(generate_game(ikep::testing::four_cycle())));
  CharacteristicFunction additive(3);
  for (Coalition s = 0; s < 8; ++s) additive[s] = std::popcount(s);
  CHECK(is_convex(additive));

  std::mt19937_64 rng(24);
  int convex = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    CharacteristicFunction v = trial % 2 ? random_game(rng, n)
                                         : generate_game(ikep::testing::random_graph(rng, 10, n, 0.3));
    if (trial % 4 == 1) {
      // Supermodular by construction: f(|S|) with f convex.
      for (Coalition s = 0; s <= v.grand(); ++s) v[s] = std::pow(std::popcount(s), 2) + (s & 1);
    }
    const bool fast = is_convex(v);
    CHECK(fast == oracle::is_convex_definitional(v));
    convex += fast;
  }
  CHECK(convex > 50);
}

TEST_CASE("quasibalance profiles") {
  const auto tri = quasibalance_profile(generate_game(ikep::testing::triangle()));
  CHECK_FALSE(tri.quasibalanced);
  CHECK(tri.a == std::vector<double>{1, 1, 1});
  CHECK(tri.b == std::vector<double>{0, 0, 0});

  const auto r2 = quasibalance_profile(generate_game(ikep::testing::fig2_round2()));
  CHECK(r2.quasibalanced);
  CHECK(r2.a == std::vector<double>{1, 0, 0});
  CHECK(r2.b == std::vector<double>{1, 0, 0});

  const auto r1 = quasibalance_profile(generate_game(ikep::testing::fig2_round1()));
  CHECK(r1.quasibalanced);
  CHECK(r1.a == std::vector<double>{0, 1, 0});
  CHECK(r1.b == std::vector<double>{1, 2, 1});
}

TEST_CASE("surplus and essential games") {
  const CharacteristicFunction v1 = generate_game(ikep::testing::fig2_round1());
  CHECK(surplus(v1) == 1);
  CHECK(is_essential(v1));
  const CompatibilityGraph two(2, {ikep::testing::vtx(0, 0), ikep::testing::vtx(1, 1)}, {});
  CHECK(surplus(generate_game(two)) == 0);
  CHECK_FALSE(is_essential(generate_game(two)));
  CharacteristicFunction additive(3);
  for (Coalition s = 0; s < 8; ++s) additive[s] = std::popcount(s);
  CHECK(surplus(additive) == 0);
}

TEST_CASE("credit-adjusted games") {
  const CharacteristicFunction v2 = generate_game(ikep::testing::fig2_round2());
  CHECK(credit_adjusted_game(v2, std::vector<double>{0, 0, 0}) == v2);
  const std::vector<double> c{-1.0 / 3, 2.0 / 3, -1.0 / 3};
  const CharacteristicFunction vb = credit_adjusted_game(v2, c);
  CHECK(vb[0b001] == Approx(-1.0 / 3));
  CHECK(vb[0b110] == Approx(1.0 / 3));
  CHECK(vb[0b111] == Approx(1.0));
  CHECK_THROWS_AS(credit_adjusted_game(v2, std::vector<double>{1, 0, 0}), ValidationError);
  CHECK_THROWS_AS(credit_adjusted_game(v2, std::vector<double>{0, 0}), ValidationError);

  std::mt19937_64 rng(25);
  std::normal_distribution<double> nd(0.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const CharacteristicFunction v = generate_game(ikep::testing::random_graph(rng, 12, n, 0.3));
    std::vector<double> shift(n);
    double total = 0;
    for (int p = 0; p + 1 < n; ++p) total += shift[p] = nd(rng);
    shift[n - 1] = -total;
    const CharacteristicFunction w = credit_adjusted_game(v, shift);
    CHECK(is_convex(w) == is_convex(v));
    CHECK(is_superadditive(w) == is_superadditive(v));
    CHECK(w.value_of_grand() == Approx(v.value_of_grand()));
  }
}

TEST_CASE("accumulated games") {
  const CharacteristicFunction v1 = generate_game(ikep::testing::fig2_round1());
  const CharacteristicFunction v2 = generate_game(ikep::testing::fig2_round2());
  CHECK(accumulate_games(std::vector{v1}) == v1);
  const CharacteristicFunction sum = accumulate_games(std::vector{v1, v2});
  CHECK(sum[0b111] == 3);
  CHECK(sum[0b011] == 2);
  CHECK(sum[0b101] == 1);
  CHECK(sum[0b110] == 1);
  const CharacteristicFunction triple = accumulate_games(std::vector{v1, v1, v1});
  for (Coalition s = 0; s < 8; ++s) CHECK(triple[s] == 3 * v1[s]);
  CHECK_THROWS_AS(accumulate_games(std::vector{v1, CharacteristicFunction(2)}), ValidationError);
  CHECK_THROWS_AS(accumulate_games(std::vector<CharacteristicFunction>{}), ValidationError);
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(CharacteristicFunction(2, {0, 1, 1}), ValidationError);
  CHECK_THROWS_AS(CharacteristicFunction(1, {1, 1}), ValidationError);
}
