#include "ikep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace ikep::oracle {

std::vector<std::vector<std::pair<int, int>>> all_matchings(const CompatibilityGraph& g) {
  std::vector<std::pair<int, int>> edges;
  for (const Edge& e : g.edges()) edges.emplace_back(g.index_of(e.u), g.index_of(e.v));
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<std::pair<int, int>> current;
  std::vector<char> used(g.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == edges.size()) {
      out.push_back(current);
      return;
    }
    rec(k + 1);
    auto [a, b] = edges[k];
    if (!used[a] && !used[b]) {
      used[a] = used[b] = 1;
      current.push_back(edges[k]);
      rec(k + 1);
      current.pop_back();
      used[a] = used[b] = 0;
    }
  };
  rec(0);
  return out;
}

int maximum_matching_size(const CompatibilityGraph& g) {
  std::size_t best = 0;
  for (const auto& m : all_matchings(g)) best = std::max(best, m.size());
  return static_cast<int>(best);
}

std::vector<MatchedCounts> maximum_matching_profiles(const CompatibilityGraph& g) {
  const auto all = all_matchings(g);
  std::size_t best = 0;
  for (const auto& m : all) best = std::max(best, m.size());
  std::vector<MatchedCounts> out;
  for (const auto& m : all) {
    if (m.size() != best) continue;
    MatchedCounts s(g.n_countries(), 0);
    for (auto [a, b] : m) {
      ++s[g.country_of_index(a)];
      ++s[g.country_of_index(b)];
    }
    out.push_back(s);
  }
  return out;
}

bool interval_feasible(const CompatibilityGraph& g, const std::vector<int>& lower,
                       const std::vector<int>& upper) {
  for (const MatchedCounts& s : maximum_matching_profiles(g)) {
    bool ok = true;
    for (int p = 0; p < g.n_countries(); ++p) ok = ok && lower[p] <= s[p] && s[p] <= upper[p];
    if (ok) return true;
  }
  return false;
}

std::optional<std::int64_t> max_weight_perfect_matching_weight(const WeightedGraph& g) {
  std::vector<std::vector<std::int64_t>> w(g.n_vertices, std::vector<std::int64_t>(g.n_vertices, -1));
  for (const WeightedEdge& e : g.edges) w[e.u][e.v] = w[e.v][e.u] = e.weight;
  std::vector<char> used(g.n_vertices, 0);
  std::optional<std::int64_t> best;
  std::function<void(std::int64_t)> rec = [&](std::int64_t acc) {
    int v = 0;
    while (v < g.n_vertices && used[v]) ++v;
    if (v == g.n_vertices) {
      if (!best || acc > *best) best = acc;
      return;
    }
    used[v] = 1;
    for (int u = v + 1; u < g.n_vertices; ++u) {
      if (used[u] || w[v][u] < 0) continue;
      used[u] = 1;
      rec(acc + w[v][u]);
      used[u] = 0;
    }
    used[v] = 0;
  };
  rec(0);
  return best;
}

namespace {

// All constraints as a.x <= b rows (equalities split, bounds included).
std::vector<std::pair<std::vector<double>, double>> as_le_rows(const LinearProgram& lp) {
  const int n = lp.n_vars();
  std::vector<std::pair<std::vector<double>, double>> rows;
  for (const auto& r : lp.rows) {
    std::vector<double> neg(n);
    for (int j = 0; j < n; ++j) neg[j] = -r.coeffs[j];
    if (r.sense != Sense::kGe) rows.emplace_back(r.coeffs, r.rhs);
    if (r.sense != Sense::kLe) rows.emplace_back(neg, -r.rhs);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    if (lp.upper[j]) {
      e[j] = 1.0;
      rows.emplace_back(e, *lp.upper[j]);
    }
    if (lp.lower[j]) {
      e[j] = -1.0;
      rows.emplace_back(e, -*lp.lower[j]);
    }
  }
  return rows;
}

std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int best = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[best][c])) best = r;
    }
    if (std::abs(a[best][c]) < 1e-10) return std::nullopt;
    std::swap(a[best], a[c]);
    std::swap(b[best], b[c]);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace

std::optional<double> lp_vertex_optimum(const LinearProgram& lp, double tol) {
  const int n = lp.n_vars();
  const auto rows = as_le_rows(lp);
  const int m = static_cast<int>(rows.size());
  const double sign = lp.direction == Direction::kMaximize ? 1.0 : -1.0;
  std::optional<double> best;
  std::vector<int> pick(n);
  std::function<void(int, int)> rec = [&](int depth, int start) {
    if (depth == n) {
      std::vector<std::vector<double>> a;
      std::vector<double> b;
      for (int k : pick) {
        a.push_back(rows[k].first);
        b.push_back(rows[k].second);
      }
      const auto x = solve_square(a, b);
      if (!x) return;
      for (const auto& [coef, rhs] : rows) {
        double lhs = 0.0;
        for (int j = 0; j < n; ++j) lhs += coef[j] * (*x)[j];
        if (lhs > rhs + tol * std::max(1.0, std::abs(rhs))) return;
      }
      double val = 0.0;
      for (int j = 0; j < n; ++j) val += lp.objective[j] * (*x)[j];
      if (!best || sign * val > sign * *best) best = val;
      return;
    }
    for (int k = start; k < m; ++k) {
      pick[depth] = k;
      rec(depth + 1, k + 1);
    }
  };
  rec(0, 0);
  return best;
}

bool fourier_motzkin_feasible(const LinearProgram& lp, double tol) {
  auto rows = as_le_rows(lp);
  const int n = lp.n_vars();
  for (int j = 0; j < n; ++j) {
    std::vector<std::pair<std::vector<double>, double>> pos;
    std::vector<std::pair<std::vector<double>, double>> neg;
    std::vector<std::pair<std::vector<double>, double>> next;
    for (auto& r : rows) {
      if (r.first[j] > tol) {
        pos.push_back(r);
      } else if (r.first[j] < -tol) {
        neg.push_back(r);
      } else {
        r.first[j] = 0.0;
        next.push_back(r);
      }
    }
    for (const auto& [pa, pb] : pos) {
      for (const auto& [na, nb] : neg) {
        const double fp = -na[j];
        const double fn = pa[j];
        std::vector<double> a(n);
        for (int k = 0; k < n; ++k) a[k] = fp * pa[k] + fn * na[k];
        a[j] = 0.0;
        next.emplace_back(std::move(a), fp * pb + fn * nb);
      }
    }
    // Scale each row so its largest coefficient is 1 and drop duplicates.
    for (auto& r : next) {
      double big = 0.0;
      for (double x : r.first) big = std::max(big, std::abs(x));
      if (big > tol) {
        for (double& x : r.first) x /= big;
        r.second /= big;
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    rows = std::move(next);
  }
  for (const auto& r : rows) {
    if (r.second < -tol) return false;
  }
  return true;
}

bool is_convex_definitional(const CharacteristicFunction& v, double tol) {
  const Coalition full = v.grand();
  for (Coalition s = 0; s <= full; ++s) {
    for (Coalition t = 0; t <= full; ++t) {
      if (v[s | t] + v[s & t] + tol < v[s] + v[t]) return false;
    }
  }
  return true;
}

CharacteristicFunction brute_force_game(const CompatibilityGraph& g) {
  CharacteristicFunction v(g.n_countries());
  for (Coalition s = 1; s <= v.grand(); ++s) v[s] = oracle::maximum_matching_size(induced_subgraph(g, s));
  return v;
}

std::vector<double> shapley_by_permutations(const CharacteristicFunction& v) {
  const int n = v.n();
  std::vector<int> order(n);
  for (int p = 0; p < n; ++p) order[p] = p;
  std::vector<double> phi(n, 0.0);
  double count = 0.0;
  do {
    Coalition s = 0;
    for (int p : order) {
      phi[p] += v[s | (Coalition{1} << p)] - v[s];
      s |= Coalition{1} << p;
    }
    count += 1.0;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& x : phi) x /= count;
  return phi;
}

bool lex_at_least(std::vector<double> a, std::vector<double> b, double tol) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] > b[i] + tol) return true;
    if (a[i] < b[i] - tol) return false;
  }
  return true;
}

std::vector<double> excesses(const CharacteristicFunction& v, const std::vector<double>& x) {
  std::vector<double> e;
  for (Coalition s = 1; s < v.grand(); ++s) {
    double sum = 0.0;
    for (int p = 0; p < v.n(); ++p) {
      if (contains(s, p)) sum += x[p];
    }
    e.push_back(sum - v[s]);
  }
  return e;
}

}  // namespace ikep::oracle
