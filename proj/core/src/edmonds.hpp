#pragma once

// Single-root augmenting path search for maximum-cardinality matching with
// blossom contraction. Shared by the coalition-restricted matcher and the
// interval gadget; callers supply neighbour iteration and an activity test.

#include <algorithm>
#include <cstdint>
#include <vector>

namespace ikep::detail {

struct EdmondsWorkspace {
  std::vector<int> parent;
  std::vector<int> base;
  std::vector<int> queue;
  std::vector<std::uint8_t> used;
  std::vector<std::uint8_t> blossom;
  std::vector<std::uint8_t> seen;
  std::vector<int> root_of;

  void resize(int n) {
    root_of.assign(n, -1);
    parent.assign(n, -1);
    base.assign(n, 0);
    used.assign(n, 0);
    blossom.assign(n, 0);
    seen.assign(n, 0);
    queue.clear();
    queue.reserve(n);
  }
};

inline int edmonds_lca(EdmondsWorkspace& w, const std::vector<int>& mate, int a, int b) {
  std::fill(w.seen.begin(), w.seen.end(), 0);
  for (;;) {
    a = w.base[a];
    w.seen[a] = 1;
    if (mate[a] == -1) break;
    a = w.parent[mate[a]];
  }
  for (;;) {
    b = w.base[b];
    if (w.seen[b]) return b;
    b = w.parent[mate[b]];
  }
}

inline void edmonds_mark_path(EdmondsWorkspace& w, const std::vector<int>& mate, int v, int b,
                              int child) {
  while (w.base[v] != b) {
    w.blossom[w.base[v]] = 1;
    w.blossom[w.base[mate[v]]] = 1;
    w.parent[v] = child;
    child = mate[v];
    v = w.parent[mate[v]];
  }
}

/// Augments along a shortest-found alternating path from the free vertex
/// `root`; returns false if none exists. `for_neighbors(v, f)` must call f(u)
/// for every neighbour u of v, and `active(u)` restricts the search.
template <typename ForNeighbors, typename Active>
bool edmonds_augment(EdmondsWorkspace& w, std::vector<int>& mate, int root,
                     ForNeighbors&& for_neighbors, Active&& active) {
  const int n = static_cast<int>(mate.size());
  std::fill(w.used.begin(), w.used.end(), 0);
  std::fill(w.parent.begin(), w.parent.end(), -1);
  for (int i = 0; i < n; ++i) w.base[i] = i;

  w.queue.clear();
  w.used[root] = 1;
  w.queue.push_back(root);
  int found = -1;
  for (std::size_t head = 0; head < w.queue.size() && found < 0; ++head) {
    const int v = w.queue[head];
    for_neighbors(v, [&](int to) {
      if (found >= 0 || !active(to)) return;
      if (w.base[v] == w.base[to] || mate[v] == to) return;
      if (to == root || (mate[to] != -1 && w.parent[mate[to]] != -1)) {
        const int cur = edmonds_lca(w, mate, v, to);
        std::fill(w.blossom.begin(), w.blossom.end(), 0);
        edmonds_mark_path(w, mate, v, cur, to);
        edmonds_mark_path(w, mate, to, cur, v);
        for (int i = 0; i < n; ++i) {
          if (w.blossom[w.base[i]]) {
            w.base[i] = cur;
            if (!w.used[i]) {
              w.used[i] = 1;
              w.queue.push_back(i);
            }
          }
        }
      } else if (w.parent[to] == -1) {
        w.parent[to] = v;
        if (mate[to] == -1) {
          found = to;
          return;
        }
        w.used[mate[to]] = 1;
        w.queue.push_back(mate[to]);
      }
    });
  }
  if (found < 0) return false;
  for (int v = found; v != -1;) {
    const int pv = w.parent[v];
    const int next = mate[pv];
    mate[v] = pv;
    mate[pv] = v;
    v = next;
  }
  return true;
}

/// Multi-source variant: grows an alternating forest from every vertex in
/// `roots` at once and augments along the first path found between two
/// trees. `roots` must contain every exposed active vertex. Returns false iff
/// the matching is maximum on the active subgraph.
template <typename ForNeighbors, typename Active>
bool edmonds_augment_forest(EdmondsWorkspace& w, std::vector<int>& mate, const std::vector<int>& roots,
                            ForNeighbors&& for_neighbors, Active&& active) {
  const int n = static_cast<int>(mate.size());
  std::fill(w.used.begin(), w.used.end(), 0);
  std::fill(w.parent.begin(), w.parent.end(), -1);
  std::fill(w.root_of.begin(), w.root_of.end(), -1);
  for (int i = 0; i < n; ++i) w.base[i] = i;

  w.queue.clear();
  for (int r : roots) {
    w.used[r] = 1;
    w.root_of[r] = r;
    w.queue.push_back(r);
  }
  int end_a = -1;
  int end_b = -1;
  for (std::size_t head = 0; head < w.queue.size() && end_a < 0; ++head) {
    const int v = w.queue[head];
    for_neighbors(v, [&](int to) {
      if (end_a >= 0 || !active(to)) return;
      if (w.base[v] == w.base[to] || mate[v] == to) return;
      const bool to_outer = mate[to] == -1 || w.parent[mate[to]] != -1;
      if (to_outer) {
        if (w.root_of[to] != w.root_of[v]) {
          end_a = v;
          end_b = to;
          return;
        }
        const int cur = edmonds_lca(w, mate, v, to);
        std::fill(w.blossom.begin(), w.blossom.end(), 0);
        edmonds_mark_path(w, mate, v, cur, to);
        edmonds_mark_path(w, mate, to, cur, v);
        for (int i = 0; i < n; ++i) {
          if (w.blossom[w.base[i]]) {
            w.base[i] = cur;
            if (!w.used[i]) {
              w.used[i] = 1;
              w.queue.push_back(i);
            }
          }
        }
      } else if (w.parent[to] == -1) {
        w.parent[to] = v;
        w.root_of[to] = w.root_of[v];
        w.root_of[mate[to]] = w.root_of[v];
        w.used[mate[to]] = 1;
        w.queue.push_back(mate[to]);
      }
    });
  }
  if (end_a < 0) return false;
  // An outer vertex x reaches its root along x, mate[x], parent[mate[x]], ...
  for (int x : {end_a, end_b}) {
    for (int y = mate[x]; y != -1;) {
      const int py = w.parent[y];
      const int next = mate[py];
      mate[y] = py;
      mate[py] = y;
      y = next;
    }
  }
  mate[end_a] = end_b;
  mate[end_b] = end_a;
  return true;
}

}  // namespace ikep::detail
