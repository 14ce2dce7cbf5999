#include <doctest.h>

#include "fixtures.hpp"
#include "ikep/error.hpp"
#include "ikep/graph.hpp"

using namespace ikep;
using ikep::testing::vtx;

TEST_CASE("construction rejects malformed graphs") {
  CHECK_THROWS_AS(CompatibilityGraph(2, {vtx(0, 2)}, {}), ValidationError);
  CHECK_THROWS_AS(CompatibilityGraph(1, {vtx(0, 0), vtx(0, 0)}, {}), ValidationError);
  CHECK_THROWS_AS(CompatibilityGraph(1, {vtx(0, 0)}, {{0, 0}}), ValidationError);
  CHECK_THROWS_AS(CompatibilityGraph(1, {vtx(0, 0), vtx(1, 0)}, {{0, 1}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(CompatibilityGraph(1, {vtx(0, 0)}, {{0, 5}}), ValidationError);
  Vertex late = vtx(0, 0);
  late.arrival_round = 0;
  CHECK_THROWS_AS(CompatibilityGraph(1, {late}, {}), ValidationError);
}

TEST_CASE("induced subgraph keeps ids and internal edges") {
  const CompatibilityGraph g = ikep::testing::fig2_round1();
  const CompatibilityGraph h = induced_subgraph(g, 0b110);
  REQUIRE(h.size() == 3);
  CHECK(h.vertices()[0].id == 1);
  CHECK(h.edges() == std::vector<Edge>{{1, 2}, {2, 3}});

  const CompatibilityGraph k = induced_subgraph(g, 0b101);
  CHECK(k.size() == 2);
  CHECK(k.edges().empty());

  CHECK(induced_subgraph(g, 0b111) == g);
  CHECK(induced_subgraph(g, 0).size() == 0);
}

TEST_CASE("induced subgraph composes and is monotone") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const CompatibilityGraph g = ikep::testing::random_graph(rng, 12, 4, 0.3);
    for (Coalition s = 0; s < 16; ++s) {
      for (Coalition t = 0; t < 16; ++t) {
        CHECK(induced_subgraph(induced_subgraph(g, s), t & s) == induced_subgraph(g, s & t));
        if ((s & t) == s) {
          const CompatibilityGraph gs = induced_subgraph(g, s);
          const CompatibilityGraph gt = induced_subgraph(g, t);
          const auto& small = gs.edges();
          const auto& big = gt.edges();
          CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
        }
      }
    }
  }
}

TEST_CASE("matched counts") {
  const CompatibilityGraph f1 = ikep::testing::fig1_graph();
  CHECK(matched_counts(f1, Matching{{{0, 1}, {3, 4}}}) == MatchedCounts{2, 2});
  CHECK(matched_counts(f1, Matching{}) == MatchedCounts{0, 0});
  const CompatibilityGraph r2 = ikep::testing::fig2_round2();
  CHECK(matched_counts(r2, Matching{{{0, 1}}}) == MatchedCounts{1, 1, 0});

  CHECK_THROWS_AS(matched_counts(r2, Matching{{{1, 2}}}), ValidationError);
  CHECK_THROWS_AS(matched_counts(r2, Matching{{{0, 1}, {0, 2}}}), ValidationError);
  CHECK_THROWS_AS(matched_counts(r2, Matching{{{0, 9}}}), ValidationError);
}

TEST_CASE("matched counts sum to twice the matching size") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const CompatibilityGraph g = ikep::testing::random_graph(rng, 14, 3, 0.25);
    Matching m;
    std::vector<char> used(g.size(), 0);
    for (const Edge& e : g.edges()) {
      if (!used[e.u] && !used[e.v] && rng() % 2) {
        used[e.u] = used[e.v] = 1;
        m.edges.push_back(e);
      }
    }
    const MatchedCounts s = matched_counts(g, m);
    int total = 0;
    for (int p = 0; p < g.n_countries(); ++p) {
      CHECK(s[p] <= g.country_sizes()[p]);
      total += s[p];
    }
    CHECK(total == 2 * static_cast<int>(m.size()));
  }
}
