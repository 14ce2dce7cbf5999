#include <algorithm>
#include <numeric>
#include <string>

#include "edmonds.hpp"
#include "ikep/error.hpp"
#include "ikep/matching.hpp"

namespace ikep {

IntervalConstraints IntervalConstraints::unconstrained(const CompatibilityGraph& g) {
  return {std::vector<int>(g.n_countries(), 0), g.country_sizes()};
}

void IntervalConstraints::validate(const CompatibilityGraph& g) const {
  const auto n = static_cast<std::size_t>(g.n_countries());
  if (lower.size() != n || upper.size() != n) {
    throw ValidationError("interval constraints must have one interval per country");
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (lower[p] > upper[p]) {
      throw ValidationError("interval for country " + std::to_string(p) + " has lower bound " +
                            std::to_string(lower[p]) + " above upper bound " + std::to_string(upper[p]));
    }
    if (lower[p] < 0 || upper[p] > g.country_sizes()[p]) {
      throw ValidationError("interval for country " + std::to_string(p) + " lies outside [0, |V_p|]");
    }
  }
}

namespace {

int matching_size(const std::vector<int>& mate) {
  return static_cast<int>(std::count_if(mate.begin(), mate.end(), [](int m) { return m >= 0; }) / 2);
}

bool meets(const CompatibilityGraph& g, const std::vector<int>& mate, std::span<const int> lo,
           std::span<const int> hi) {
  const MatchedCounts s = matched_counts_from_mates(g, mate);
  for (int p = 0; p < g.n_countries(); ++p) {
    if (s[p] < lo[p] || s[p] > hi[p]) return false;
  }
  return true;
}

}  // namespace

IntervalMatcher::IntervalMatcher(const CompatibilityGraph& g, IntervalMethod method)
    : g_(&g),
      method_(method),
      base_(maximum_matching_mates(g)),
      members_(g.n_countries()),
      work_(std::make_unique<detail::EdmondsWorkspace>()) {
  mu_ = matching_size(base_);
  for (int i = 0; i < g.size(); ++i) members_[g.country_of_index(i)].push_back(i);
}

IntervalMatcher::~IntervalMatcher() = default;
IntervalMatcher::IntervalMatcher(IntervalMatcher&&) noexcept = default;
IntervalMatcher& IntervalMatcher::operator=(IntervalMatcher&&) noexcept = default;

std::optional<std::vector<int>> IntervalMatcher::solve(std::span<const int> lower,
                                                       std::span<const int> upper,
                                                       const std::vector<int>* hint) {
  const CompatibilityGraph& g = *g_;
  const int n = g.n_countries();
  std::vector<int> lo(n);
  std::vector<int> hi(n);
  long sum_lo = 0;
  long sum_hi = 0;
  for (int p = 0; p < n; ++p) {
    lo[p] = std::max(lower[p], 0);
    hi[p] = std::min(upper[p], g.country_sizes()[p]);
    if (lo[p] > hi[p]) return std::nullopt;
    sum_lo += lo[p];
    sum_hi += hi[p];
  }
  if (sum_lo > 2L * mu_ || sum_hi < 2L * mu_) return std::nullopt;
  if (hint != nullptr && meets(g, *hint, lo, hi)) return *hint;
  if (meets(g, base_, lo, hi)) return base_;

  ++queries_;
  if (method_ == IntervalMethod::kWeighted) return solve_weighted(lo, hi);
  return solve_absorber(lo, hi, hint != nullptr ? *hint : base_);
}

std::optional<std::vector<int>> IntervalMatcher::solve_absorber(std::span<const int> lo,
                                                                std::span<const int> hi,
                                                                const std::vector<int>& seed) {
  const CompatibilityGraph& g = *g_;
  const int n = g.n_countries();
  const int nv = g.size();

  // Layout: real vertices, forced dummies, free dummies, absorbers. Dummies of
  // one kind are contiguous per country.
  std::vector<int> forced_begin(n + 1);
  std::vector<int> free_begin(n + 1);
  forced_begin[0] = nv;
  for (int p = 0; p < n; ++p) forced_begin[p + 1] = forced_begin[p] + g.country_sizes()[p] - hi[p];
  free_begin[0] = forced_begin[n];
  int sum_lo = 0;
  for (int p = 0; p < n; ++p) {
    free_begin[p + 1] = free_begin[p] + hi[p] - lo[p];
    sum_lo += lo[p];
  }
  const int absorb_begin = free_begin[n];
  const int total = absorb_begin + 2 * mu_ - sum_lo;
  std::vector<int> owner(total - nv, -1);
  for (int p = 0; p < n; ++p) {
    for (int d = forced_begin[p]; d < forced_begin[p + 1]; ++d) owner[d - nv] = p;
    for (int d = free_begin[p]; d < free_begin[p + 1]; ++d) owner[d - nv] = p;
  }

  auto for_neighbors = [&](int v, auto&& f) {
    if (v < nv) {
      for (int to : g.neighbors(v)) f(to);
      const int p = g.country_of_index(v);
      for (int d = forced_begin[p]; d < forced_begin[p + 1]; ++d) f(d);
      for (int d = free_begin[p]; d < free_begin[p + 1]; ++d) f(d);
    } else if (v < free_begin[0]) {
      for (int r : members_[owner[v - nv]]) f(r);
    } else if (v < absorb_begin) {
      for (int r : members_[owner[v - nv]]) f(r);
      for (int a = absorb_begin; a < total; ++a) f(a);
    } else {
      for (int d = free_begin[0]; d < absorb_begin; ++d) f(d);
    }
  };

  std::vector<int> mate(total, -1);
  std::copy(seed.begin(), seed.end(), mate.begin());
  int next_free_absorber = absorb_begin;
  for (int p = 0; p < n; ++p) {
    int d = forced_begin[p];
    for (int r : members_[p]) {
      if (mate[r] != -1) continue;
      if (d == forced_begin[p + 1]) d = free_begin[p];
      if (d == free_begin[p + 1]) break;
      mate[r] = d;
      mate[d] = r;
      ++d;
    }
  }
  for (int d = free_begin[0]; d < absorb_begin && next_free_absorber < total; ++d) {
    if (mate[d] != -1) continue;
    mate[d] = next_free_absorber;
    mate[next_free_absorber] = d;
    ++next_free_absorber;
  }

  work_->resize(total);
  auto all = [](int) { return true; };
  for (int v = 0; v < total; ++v) {
    if (mate[v] == -1 && !detail::edmonds_augment(*work_, mate, v, for_neighbors, all)) {
      return std::nullopt;
    }
  }
  std::vector<int> result(nv, -1);
  for (int v = 0; v < nv; ++v) {
    if (mate[v] < nv) result[v] = mate[v];
  }
  return result;
}

std::optional<std::vector<int>> IntervalMatcher::solve_weighted(std::span<const int> lo,
                                                                std::span<const int> hi) {
  const CompatibilityGraph& g = *g_;
  const int nv = g.size();
  const std::optional<Matching> pm = max_weight_perfect_matching(build_interval_gadget(g, lo, hi));
  if (!pm) return std::nullopt;
  std::vector<int> result(nv, -1);
  int real = 0;
  for (const Edge& e : pm->edges) {
    if (e.v < nv) {
      result[e.u] = e.v;
      result[e.v] = e.u;
      ++real;
    }
  }
  if (real != mu_) return std::nullopt;
  return result;
}

WeightedGraph build_interval_gadget(const CompatibilityGraph& g, std::span<const int> lower,
                                    std::span<const int> upper) {
  const int n = g.n_countries();
  const int nv = g.size();
  std::vector<std::vector<int>> members(n);
  for (int i = 0; i < nv; ++i) members[g.country_of_index(i)].push_back(i);

  WeightedGraph out;
  for (const Edge& e : g.edges()) {
    out.edges.push_back({g.index_of(e.u), g.index_of(e.v), 1});
  }
  int next = nv;
  std::vector<int> clique;
  int sum_lo = 0;
  for (int p = 0; p < n; ++p) {
    const int size = g.country_sizes()[p];
    const int lo = std::max(lower[p], 0);
    const int hi = std::min(upper[p], size);
    if (lo > hi) throw ValidationError("empty interval for country " + std::to_string(p));
    sum_lo += lo;
    for (int k = 0; k < size - hi; ++k, ++next) {
      for (int r : members[p]) out.edges.push_back({r, next, 0});
    }
    for (int k = 0; k < hi - lo; ++k, ++next) {
      for (int r : members[p]) out.edges.push_back({r, next, 0});
      clique.push_back(next);
    }
  }
  if (sum_lo % 2 != 0) clique.push_back(next++);
  for (std::size_t a = 0; a < clique.size(); ++a) {
    for (std::size_t b = a + 1; b < clique.size(); ++b) out.edges.push_back({clique[a], clique[b], 0});
  }
  out.n_vertices = next;
  return out;
}

std::optional<Matching> interval_feasible_maximum_matching(const CompatibilityGraph& g,
                                                           const IntervalConstraints& iv) {
  iv.validate(g);
  IntervalMatcher matcher(g);
  const auto mate = matcher.solve(iv.lower, iv.upper);
  if (!mate) return std::nullopt;
  return matching_from_mates(g, *mate);
}

}  // namespace ikep
