#pragma once

#include <random>
#include <vector>

#include "ikep/graph.hpp"

namespace ikep::testing {

inline Vertex vtx(int id, int country) { return Vertex{id, country, 1, {}, {}, {}}; }

// Round 1 of the two-round walkthrough: path i1-i2-i3-i4 with V1={i1},
// V2={i2,i3}, V3={i4}. Ids 0..3 stand for i1..i4.
inline CompatibilityGraph fig2_round1() {
  return CompatibilityGraph(3, {vtx(0, 0), vtx(1, 1), vtx(2, 1), vtx(3, 2)}, {{0, 1}, {1, 2}, {2, 3}});
}

// Round 2: edges j1j2, j1j3 with one pair per country. Ids 0..2 stand for j1..j3.
inline CompatibilityGraph fig2_round2() {
  return CompatibilityGraph(3, {vtx(0, 0), vtx(1, 1), vtx(2, 2)}, {{0, 1}, {0, 2}});
}

// Two countries: edges i1i2, i2j2, j1j2 and i3 isolated; V1={i1,i2,i3},
// V2={j1,j2}. Ids: i1..i3 = 0..2, j1 = 3, j2 = 4.
inline CompatibilityGraph fig1_graph() {
  return CompatibilityGraph(2, {vtx(0, 0), vtx(1, 0), vtx(2, 0), vtx(3, 1), vtx(4, 1)},
                            {{0, 1}, {1, 4}, {3, 4}});
}

/// Erdos-Renyi graph with uniformly random country labels.
inline CompatibilityGraph random_graph(std::mt19937_64& rng, int n_vertices, int n_countries, double p) {
  std::uniform_int_distribution<int> country(0, n_countries - 1);
  std::bernoulli_distribution coin(p);
  std::vector<Vertex> vs;
  for (int i = 0; i < n_vertices; ++i) vs.push_back(vtx(i, country(rng)));
  std::vector<Edge> es;
  for (int a = 0; a < n_vertices; ++a) {
    for (int b = a + 1; b < n_vertices; ++b) {
      if (coin(rng)) es.emplace_back(a, b);
    }
  }
  return CompatibilityGraph(n_countries, std::move(vs), std::move(es));
}

}  // namespace ikep::testing

namespace ikep::testing {

// Ids 0..2 form a triangle, one vertex per country.
inline CompatibilityGraph triangle() {
  return CompatibilityGraph(3, {vtx(0, 0), vtx(1, 1), vtx(2, 2)}, {{0, 1}, {1, 2}, {0, 2}});
}

// 4-cycle a-b-c-d-a, one vertex per country.
inline CompatibilityGraph four_cycle() {
  return CompatibilityGraph(4, {vtx(0, 0), vtx(1, 1), vtx(2, 2), vtx(3, 3)}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

// 3-path u-v-w, one vertex per country.
inline CompatibilityGraph three_path() {
  return CompatibilityGraph(3, {vtx(0, 0), vtx(1, 1), vtx(2, 2)}, {{0, 1}, {1, 2}});
}

// Single edge between two countries.
inline CompatibilityGraph single_edge() { return CompatibilityGraph(2, {vtx(0, 0), vtx(1, 1)}, {{0, 1}}); }

}  // namespace ikep::testing

namespace ikep::testing {

// Two-round walkthrough as one instance: i1..i4 (ids 0..3) arrive in round 1,
// j1..j3 (ids 4..6) in round 2.
inline CompatibilityGraph fig2_two_rounds() {
  auto at = [](int id, int country, int round) { return Vertex{id, country, round, {}, {}, {}}; };
  return CompatibilityGraph(3, {at(0, 0, 1), at(1, 1, 1), at(2, 1, 1), at(3, 2, 1), at(4, 0, 2), at(5, 1, 2), at(6, 2, 2)},
                            {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {4, 6}});
}

}  // namespace ikep::testing
