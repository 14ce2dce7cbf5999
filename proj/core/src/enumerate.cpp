#include <algorithm>
#include <string>

#include "ikep/error.hpp"
#include "ikep/matching.hpp"

namespace ikep {

namespace {

struct Enumerator {
  const CompatibilityGraph& g;
  int mu;
  std::vector<int> mate;
  std::vector<Edge> chosen;
  std::vector<Matching> out;

  void recurse(int v, int matched_edges) {
    const int n = g.size();
    while (v < n && mate[v] != -1) ++v;
    if (matched_edges + (n - v) / 2 < mu) return;
    if (v >= n) {
      Matching m{chosen};
      std::sort(m.edges.begin(), m.edges.end());
      out.push_back(std::move(m));
      return;
    }
    mate[v] = v;  // mark as deliberately exposed
    recurse(v + 1, matched_edges);
    for (int u : g.neighbors(v)) {
      if (u <= v || mate[u] != -1) continue;
      mate[v] = u;
      mate[u] = v;
      chosen.emplace_back(g.vertices()[v].id, g.vertices()[u].id);
      recurse(v + 1, matched_edges + 1);
      chosen.pop_back();
      mate[u] = -1;
    }
    mate[v] = -1;
  }
};

}  // namespace

std::vector<Matching> enumerate_maximum_matchings(const CompatibilityGraph& g, int cap) {
  if (g.size() > cap) {
    throw CapacityError("exhaustive matching enumeration refused: " + std::to_string(g.size()) +
                        " vertices exceed the cap of " + std::to_string(cap));
  }
  Enumerator e{g, maximum_matching_size(g), std::vector<int>(g.size(), -1), {}, {}};
  e.recurse(0, 0);
  std::sort(e.out.begin(), e.out.end(),
            [](const Matching& a, const Matching& b) { return a.edges < b.edges; });
  return e.out;
}

}  // namespace ikep
