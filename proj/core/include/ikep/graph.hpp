#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ikep {

/// Set of countries encoded as a bitmask; bit p set iff country p belongs.
using Coalition = std::uint32_t;

constexpr Coalition grand_coalition(int n_countries) {
  return n_countries >= 32 ? ~Coalition{0} : (Coalition{1} << n_countries) - 1;
}
constexpr bool contains(Coalition s, int p) { return (s >> p) & 1u; }

enum class BloodType { kO, kA, kB, kAB };
enum class PraClass { kLow, kMedium, kHigh };

std::string_view to_string(BloodType b);
std::string_view to_string(PraClass p);
std::optional<BloodType> parse_blood_type(std::string_view s);
std::optional<PraClass> parse_pra_class(std::string_view s);

/// A patient-donor pair.
struct Vertex {
  int id = 0;
  int country = 0;
  int arrival_round = 1;
  std::optional<BloodType> donor_blood;
  std::optional<BloodType> patient_blood;
  std::optional<PraClass> pra;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Unordered vertex-id pair, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected compatibility graph whose vertices are partitioned into
/// countries. Immutable once constructed. Vertex ids need not be dense
/// (induced subgraphs keep the ids of their host), but algorithms address
/// vertices by their position ("index") in vertices().
class CompatibilityGraph {
 public:
  CompatibilityGraph() = default;

  /// Validates: unique ids, 0 <= country < n_countries, arrival_round >= 1,
  /// no self-loops, no duplicate edges, endpoints exist.
  CompatibilityGraph(int n_countries, std::vector<Vertex> vertices, std::vector<Edge> edges);

  int n_countries() const { return n_countries_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Position of vertex id in vertices(), or -1.
  int index_of(int id) const;
  int country_of_index(int index) const { return vertices_[index].country; }

  /// Neighbour indices of a vertex index, ascending.
  std::span<const int> neighbors(int index) const {
    return {adjacency_.data() + offsets_[index], adjacency_.data() + offsets_[index + 1]};
  }

  /// |V_p| for every country.
  const std::vector<int>& country_sizes() const { return country_sizes_; }

  /// Countries with at least one vertex, as a bitmask.
  Coalition occupied() const;

  friend bool operator==(const CompatibilityGraph& a, const CompatibilityGraph& b) {
    return a.n_countries_ == b.n_countries_ && a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  int n_countries_ = 0;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;  // sorted
  std::vector<int> offsets_{0};
  std::vector<int> adjacency_;
  std::vector<int> country_sizes_;
  // Sorted (id, index) pairs for id lookup; empty when ids are 0..n-1 in order.
  std::vector<std::pair<int, int>> id_index_;
  bool dense_ids_ = true;
};

/// A set of pairwise vertex-disjoint edges, sorted.
struct Matching {
  std::vector<Edge> edges;

  std::size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
  friend bool operator==(const Matching&, const Matching&) = default;
};

/// s_p(M): number of matched vertices of each country.
using MatchedCounts = std::vector<int>;

/// Subgraph on the vertices of the coalition's countries; ids preserved.
CompatibilityGraph induced_subgraph(const CompatibilityGraph& g, Coalition coalition);

/// Throws ValidationError unless m is a matching of g.
void validate_matching(const CompatibilityGraph& g, const Matching& m);

/// Counts matched vertices per country. Throws ValidationError if an edge
/// references an unknown vertex or is not a matching of g.
MatchedCounts matched_counts(const CompatibilityGraph& g, const Matching& m);

/// Converts a mate array (mate[i] = partner index or -1) to a Matching of ids.
Matching matching_from_mates(const CompatibilityGraph& g, std::span<const int> mate);

/// Inverse of matching_from_mates.
std::vector<int> mates_from_matching(const CompatibilityGraph& g, const Matching& m);

/// s_p for a mate array.
MatchedCounts matched_counts_from_mates(const CompatibilityGraph& g, std::span<const int> mate);

}  // namespace ikep
