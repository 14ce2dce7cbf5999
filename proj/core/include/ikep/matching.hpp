#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ikep/graph.hpp"

namespace ikep {

namespace detail {
struct EdmondsWorkspace;
}

// ---------------------------------------------------------------------------
// Maximum-cardinality matching
// ---------------------------------------------------------------------------

/// Edmonds' augmenting-path search with odd-cycle (blossom) contraction,
/// working on vertex indices of a CompatibilityGraph. The matcher can be
/// restricted to the vertices of a coalition, which lets the game engine
/// grow the matching of S into a matching of S + {p} without starting over.
class BlossomMatcher {
 public:
  explicit BlossomMatcher(const CompatibilityGraph& g);
  ~BlossomMatcher();
  BlossomMatcher(BlossomMatcher&&) noexcept;
  BlossomMatcher& operator=(BlossomMatcher&&) noexcept;

  /// Searches for an augmenting path rooted at the free vertex `root` inside
  /// the subgraph induced by `active`, and flips it. Returns true on success.
  bool augment_from(int root, std::vector<int>& mate, Coalition active);

  /// Augments from every free active vertex in ascending index order; the
  /// result is a maximum matching of the active subgraph. Returns the number
  /// of augmentations performed.
  int grow(std::vector<int>& mate, Coalition active);

  /// Same result as grow, but searches from all free active vertices at once,
  /// so the cost is one search per augmentation plus one. Preferred when
  /// `mate` is already close to maximum (e.g. maximum on a sub-coalition).
  int grow_warm(std::vector<int>& mate, Coalition active);

 private:
  const CompatibilityGraph* g_;
  std::unique_ptr<detail::EdmondsWorkspace> work_;
};

/// Maximum-cardinality matching. Deterministic: augmentations are attempted
/// from free vertices in ascending index order starting from the empty matching.
Matching maximum_matching(const CompatibilityGraph& g);
std::vector<int> maximum_matching_mates(const CompatibilityGraph& g);
int maximum_matching_size(const CompatibilityGraph& g);

// ---------------------------------------------------------------------------
// Maximum-weight perfect matching
// ---------------------------------------------------------------------------

struct WeightedEdge {
  int u = 0;
  int v = 0;
  std::int64_t weight = 0;
};

/// Simple graph on vertices 0..n_vertices-1 with non-negative integer weights.
struct WeightedGraph {
  int n_vertices = 0;
  std::vector<WeightedEdge> edges;

  /// Throws ValidationError on negative weights, self-loops, parallel edges
  /// or out-of-range endpoints.
  void validate() const;
};

/// Maximum-weight matching by the primal-dual blossom method. With
/// `max_cardinality` the result is a maximum-weight matching among the
/// maximum-cardinality ones. Returns mate[v] or -1.
std::vector<int> max_weight_matching(const WeightedGraph& g, bool max_cardinality);

/// Maximum-weight perfect matching, or nullopt if no perfect matching exists.
/// Edges in the result are vertex indices.
std::optional<Matching> max_weight_perfect_matching(const WeightedGraph& g);

// ---------------------------------------------------------------------------
// Maximum matchings under per-country interval constraints
// ---------------------------------------------------------------------------

/// Closed integer intervals [lower_p, upper_p] on s_p(M).
struct IntervalConstraints {
  std::vector<int> lower;
  std::vector<int> upper;

  /// Unconstrained intervals [0, |V_p|].
  static IntervalConstraints unconstrained(const CompatibilityGraph& g);

  /// Throws ValidationError unless 0 <= l_p <= u_p <= |V_p| for every p.
  void validate(const CompatibilityGraph& g) const;
};

/// How IntervalMatcher answers a query.
///  kAbsorber: unweighted gadget (forced dummies, free dummies, and
///    2*mu - sum(l) absorbers adjacent to every free dummy), solved as a
///    perfect-matching test warm-started from a known maximum matching.
///  kWeighted: the 0/1-weighted gadget of build_interval_gadget solved by
///    max_weight_perfect_matching; feasible iff the optimum weight is mu.
/// Both decide the same question; kWeighted is kept as a cross-check.
enum class IntervalMethod { kAbsorber, kWeighted };

/// Decides whether some maximum matching M of g has s_p(M) in I_p for all p.
/// Caches mu and one maximum matching of g across queries. Not thread-safe.
class IntervalMatcher {
 public:
  explicit IntervalMatcher(const CompatibilityGraph& g, IntervalMethod method = IntervalMethod::kAbsorber);
  ~IntervalMatcher();
  IntervalMatcher(IntervalMatcher&&) noexcept;
  IntervalMatcher& operator=(IntervalMatcher&&) noexcept;

  int mu() const { return mu_; }
  const CompatibilityGraph& graph() const { return *g_; }

  /// The cached maximum matching (mate array by vertex index).
  const std::vector<int>& base_mates() const { return base_; }

  /// A maximum matching meeting the intervals (mate array), or nullopt.
  /// Intervals are clipped to [0, |V_p|]; an empty interval is infeasible.
  /// `hint`, if given, must be a maximum matching; it is returned unchanged
  /// when it already meets the intervals and otherwise seeds the search.
  std::optional<std::vector<int>> solve(std::span<const int> lower, std::span<const int> upper,
                                        const std::vector<int>* hint = nullptr);

  /// Number of gadget solves performed so far (trivial answers excluded).
  std::int64_t queries() const { return queries_; }

 private:
  std::optional<std::vector<int>> solve_absorber(std::span<const int> lower, std::span<const int> upper,
                                                 const std::vector<int>& seed);
  std::optional<std::vector<int>> solve_weighted(std::span<const int> lower, std::span<const int> upper);

  const CompatibilityGraph* g_;
  IntervalMethod method_;
  int mu_ = 0;
  std::vector<int> base_;
  std::vector<std::vector<int>> members_;  // vertex indices per country
  std::unique_ptr<detail::EdmondsWorkspace> work_;
  std::int64_t queries_ = 0;
};

/// Lemma-style query: a maximum matching of g with l_p <= s_p(M) <= u_p for
/// every country, or nullopt. Throws ValidationError on malformed intervals.
std::optional<Matching> interval_feasible_maximum_matching(const CompatibilityGraph& g,
                                                           const IntervalConstraints& iv);

/// Builds the weighted gadget graph G'. Vertices 0..|V|-1 are the real
/// vertices (by index); the rest are dummies. Real edges weigh 1, dummy edges 0.
WeightedGraph build_interval_gadget(const CompatibilityGraph& g, std::span<const int> lower,
                                    std::span<const int> upper);

// ---------------------------------------------------------------------------
// Exhaustive enumeration (test oracle)
// ---------------------------------------------------------------------------

inline constexpr int kDefaultEnumerationCap = 16;

/// Every maximum-cardinality matching of g, sorted lexicographically by edge
/// list. Throws CapacityError when |V| exceeds `cap`.
std::vector<Matching> enumerate_maximum_matchings(const CompatibilityGraph& g,
                                                  int cap = kDefaultEnumerationCap);

}  // namespace ikep
