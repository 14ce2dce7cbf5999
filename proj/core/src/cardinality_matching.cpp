#include <algorithm>

#include "edmonds.hpp"
#include "ikep/matching.hpp"

namespace ikep {

BlossomMatcher::BlossomMatcher(const CompatibilityGraph& g)
    : g_(&g), work_(std::make_unique<detail::EdmondsWorkspace>()) {
  work_->resize(g.size());
}

BlossomMatcher::~BlossomMatcher() = default;
BlossomMatcher::BlossomMatcher(BlossomMatcher&&) noexcept = default;
BlossomMatcher& BlossomMatcher::operator=(BlossomMatcher&&) noexcept = default;

bool BlossomMatcher::augment_from(int root, std::vector<int>& mate, Coalition active) {
  const CompatibilityGraph& g = *g_;
  return detail::edmonds_augment(
      *work_, mate, root,
      [&g](int v, auto&& f) {
        for (int to : g.neighbors(v)) f(to);
      },
      [&g, active](int u) { return contains(active, g.country_of_index(u)); });
}

int BlossomMatcher::grow(std::vector<int>& mate, Coalition active) {
  int augmented = 0;
  for (int v = 0; v < g_->size(); ++v) {
    if (mate[v] == -1 && contains(active, g_->country_of_index(v)) && augment_from(v, mate, active)) {
      ++augmented;
    }
  }
  return augmented;
}

int BlossomMatcher::grow_warm(std::vector<int>& mate, Coalition active) {
  const CompatibilityGraph& g = *g_;
  auto in = [&g, active](int u) { return contains(active, g.country_of_index(u)); };
  std::vector<int> roots;
  int augmented = 0;
  for (;;) {
    roots.clear();
    for (int v = 0; v < g.size(); ++v) {
      if (mate[v] == -1 && in(v)) roots.push_back(v);
    }
    if (roots.size() < 2) return augmented;
    const bool found = detail::edmonds_augment_forest(
        *work_, mate, roots,
        [&g](int v, auto&& f) {
          for (int to : g.neighbors(v)) f(to);
        },
        in);
    if (!found) return augmented;
    ++augmented;
  }
}

std::vector<int> maximum_matching_mates(const CompatibilityGraph& g) {
  std::vector<int> mate(g.size(), -1);
  if (g.size() == 0) return mate;
  BlossomMatcher matcher(g);
  matcher.grow(mate, grand_coalition(g.n_countries()));
  return mate;
}

Matching maximum_matching(const CompatibilityGraph& g) {
  return matching_from_mates(g, maximum_matching_mates(g));
}

int maximum_matching_size(const CompatibilityGraph& g) {
  const std::vector<int> mate = maximum_matching_mates(g);
  return static_cast<int>(std::count_if(mate.begin(), mate.end(), [](int m) { return m >= 0; }) / 2);
}

}  // namespace ikep
