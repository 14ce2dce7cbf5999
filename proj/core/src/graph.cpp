#include "ikep/graph.hpp"

#include <algorithm>
#include <string>

#include "ikep/error.hpp"

namespace ikep {

std::string_view to_string(BloodType b) {
  switch (b) {
    case BloodType::kO: return "O";
    case BloodType::kA: return "A";
    case BloodType::kB: return "B";
    case BloodType::kAB: return "AB";
  }
  return "?";
}

std::string_view to_string(PraClass p) {
  switch (p) {
    case PraClass::kLow: return "low";
    case PraClass::kMedium: return "medium";
    case PraClass::kHigh: return "high";
  }
  return "?";
}

std::optional<BloodType> parse_blood_type(std::string_view s) {
  if (s == "O") return BloodType::kO;
  if (s == "A") return BloodType::kA;
  if (s == "B") return BloodType::kB;
  if (s == "AB") return BloodType::kAB;
  return std::nullopt;
}

std::optional<PraClass> parse_pra_class(std::string_view s) {
  if (s == "low") return PraClass::kLow;
  if (s == "medium") return PraClass::kMedium;
  if (s == "high") return PraClass::kHigh;
  return std::nullopt;
}

CompatibilityGraph::CompatibilityGraph(int n_countries, std::vector<Vertex> vertices,
                                       std::vector<Edge> edges)
    : n_countries_(n_countries), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (n_countries_ < 0) throw ValidationError("negative country count");
  const int n = size();
  country_sizes_.assign(n_countries_, 0);
  for (int i = 0; i < n; ++i) {
    const Vertex& v = vertices_[i];
    if (v.country < 0 || v.country >= n_countries_) {
      throw ValidationError("vertex " + std::to_string(v.id) + " has country " +
                            std::to_string(v.country) + " outside [0, " +
                            std::to_string(n_countries_) + ")");
    }
    if (v.arrival_round < 1) {
      throw ValidationError("vertex " + std::to_string(v.id) + " has arrival_round < 1");
    }
    ++country_sizes_[v.country];
    if (v.id != i) dense_ids_ = false;
  }
  if (!dense_ids_) {
    id_index_.reserve(n);
    for (int i = 0; i < n; ++i) id_index_.emplace_back(vertices_[i].id, i);
    std::sort(id_index_.begin(), id_index_.end());
    for (int i = 1; i < n; ++i) {
      if (id_index_[i].first == id_index_[i - 1].first) {
        throw ValidationError("duplicate vertex id " + std::to_string(id_index_[i].first));
      }
    }
  }

  std::vector<int> degree(n, 0);
  for (Edge& e : edges_) {
    e = Edge(e.u, e.v);
    if (e.u == e.v) throw ValidationError("self-loop at vertex " + std::to_string(e.u));
    const int a = index_of(e.u);
    const int b = index_of(e.v);
    if (a < 0 || b < 0) {
      throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") references an unknown vertex");
    }
    ++degree[a];
    ++degree[b];
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw ValidationError("duplicate edge");
  }

  offsets_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  adjacency_.assign(offsets_[n], 0);
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    const int a = index_of(e.u);
    const int b = index_of(e.v);
    adjacency_[fill[a]++] = b;
    adjacency_[fill[b]++] = a;
  }
  for (int i = 0; i < n; ++i) {
    std::sort(adjacency_.begin() + offsets_[i], adjacency_.begin() + offsets_[i + 1]);
  }
}

int CompatibilityGraph::index_of(int id) const {
  if (dense_ids_) return (id >= 0 && id < size()) ? id : -1;
  auto it = std::lower_bound(id_index_.begin(), id_index_.end(), std::make_pair(id, -1));
  if (it == id_index_.end() || it->first != id) return -1;
  return it->second;
}

Coalition CompatibilityGraph::occupied() const {
  Coalition s = 0;
  for (int p = 0; p < n_countries_; ++p) {
    if (country_sizes_[p] > 0) s |= Coalition{1} << p;
  }
  return s;
}

CompatibilityGraph induced_subgraph(const CompatibilityGraph& g, Coalition coalition) {
  std::vector<Vertex> vertices;
  for (const Vertex& v : g.vertices()) {
    if (contains(coalition, v.country)) vertices.push_back(v);
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (contains(coalition, g.country_of_index(g.index_of(e.u))) &&
        contains(coalition, g.country_of_index(g.index_of(e.v)))) {
      edges.push_back(e);
    }
  }
  return CompatibilityGraph(g.n_countries(), std::move(vertices), std::move(edges));
}

namespace {

std::vector<int> mates_or_throw(const CompatibilityGraph& g, const Matching& m) {
  std::vector<int> mate(g.size(), -1);
  for (const Edge& e : m.edges) {
    const int a = g.index_of(e.u);
    const int b = g.index_of(e.v);
    if (a < 0 || b < 0) {
      throw ValidationError("matching edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") references an unknown vertex");
    }
    auto nb = g.neighbors(a);
    if (!std::binary_search(nb.begin(), nb.end(), b)) {
      throw ValidationError("matching edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") is not an edge of the graph");
    }
    if (mate[a] != -1 || mate[b] != -1) {
      throw ValidationError("matching edges share vertex");
    }
    mate[a] = b;
    mate[b] = a;
  }
  return mate;
}

}  // namespace

void validate_matching(const CompatibilityGraph& g, const Matching& m) { mates_or_throw(g, m); }

MatchedCounts matched_counts(const CompatibilityGraph& g, const Matching& m) {
  const std::vector<int> mate = mates_or_throw(g, m);
  return matched_counts_from_mates(g, mate);
}

MatchedCounts matched_counts_from_mates(const CompatibilityGraph& g, std::span<const int> mate) {
  MatchedCounts s(g.n_countries(), 0);
  for (int i = 0; i < g.size(); ++i) {
    if (mate[i] >= 0) ++s[g.country_of_index(i)];
  }
  return s;
}

Matching matching_from_mates(const CompatibilityGraph& g, std::span<const int> mate) {
  Matching m;
  for (int i = 0; i < g.size(); ++i) {
    if (mate[i] > i) m.edges.emplace_back(g.vertices()[i].id, g.vertices()[mate[i]].id);
  }
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

std::vector<int> mates_from_matching(const CompatibilityGraph& g, const Matching& m) {
  return mates_or_throw(g, m);
}

}  // namespace ikep
