#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ikep/balancing.hpp"
#include "ikep/config.hpp"
#include "ikep/credit.hpp"
#include "ikep/graph.hpp"

namespace ikep {

/// A multi-round instance: every pair of the horizon with its arrival round
/// and country, and the mutual-compatibility edges among them.
struct Instance {
  CompatibilityGraph graph;
  std::string setting = "equal";
  int index = 0;
};

struct RunOptions {
  int rounds = 24;
  int max_wait_rounds = 4;
  bool stability = true;
  LexminMethod lexmin = LexminMethod::kGreedy;
};

/// Seconds spent per task in one round.
struct RoundTimings {
  double prep = 0.0;
  double graph = 0.0;
  double game = 0.0;
  double solution = 0.0;
  double selection = 0.0;

  double total() const { return prep + graph + game + solution + selection; }
};

struct InstanceReport {
  std::string setting;
  Concept solution = Concept::kShapley;
  Scenario scenario = Scenario::kArbitrary;
  int n = 0;
  int instance = 0;

  std::vector<RoundRecord> rounds;
  std::vector<double> x_star;  // sum of targets
  std::vector<double> y_star;  // sum of initial allocations
  MatchedCounts s_star;
  int matching_size = 0;  // |M*|
  /// sum_p |c^h_p| for h = 1..rounds+1, with c^h = sum over t < h of y^t - s(M^t).
  std::vector<double> credit_series;

  std::vector<bool> convex;
  std::vector<bool> quasibalanced;
  /// Round games where tau exists and equals the benefit value.
  std::vector<bool> tau_equals_benefit;
  int tau_fallbacks = 0;

  bool aborted = false;
  std::string diagnostic;

  int no_cooperation_total = 0;  // transplants without cooperation

  bool has_stability = false;
  double stability_initial = 0.0;   // min excess of y* in the doubled accumulated game
  double stability_solution = 0.0;  // same for s*
  bool accumulated_core_nonempty = false;

  /// Not serialized with the report; see timings_csv.
  std::vector<RoundTimings> timings;

  int transplants() const { return 2 * matching_size; }
};

/// Vertex indices present in round 1.
std::vector<int> initial_pool(const CompatibilityGraph& g);

/// Pool for round h + 1: drops matched vertices and unmatched vertices that
/// have waited max_wait_rounds rounds, then adds the arrivals of round h + 1.
std::vector<int> advance_pool(const CompatibilityGraph& g, const std::vector<int>& present, const Matching& m,
                              int h, int max_wait_rounds = 4);

/// Subgraph on the present vertex indices; vertex ids are preserved.
CompatibilityGraph round_graph(const CompatibilityGraph& g, const std::vector<int>& present);

/// One run of a targeted scenario. Throws ValidationError for a bar
/// scenario with a concept other than banzhaf.
InstanceReport run_instance(const Instance& inst, Concept solution, Scenario scenario, const RunOptions& opt);

/// The arbitrary scenario, whose matchings do not depend on the concept: one
/// pass over the rounds yields a report per concept.
std::vector<InstanceReport> run_arbitrary(const Instance& inst, std::span<const Concept> concepts,
                                          const RunOptions& opt);

struct Baseline {
  std::vector<int> per_round;  // transplants
  int total = 0;
};

/// Every country matches only its own pairs; pool dynamics as usual.
Baseline no_cooperation_baseline(const Instance& inst, const RunOptions& opt);

/// Simulation runs per instance cell: the shared arbitrary run counts once.
int runs_per_cell(const SimulationConfig& cfg);

/// Every report of the configured batch, ordered by (setting, n, instance,
/// scenario, concept). Cells run on `parallel` worker threads; the result
/// does not depend on the worker count. `progress` is called after each cell
/// with (done, total).
std::vector<InstanceReport> run_batch(const SimulationConfig& cfg, int parallel = 1,
                                      const std::function<void(int, int)>& progress = {});

/// Cells of a batch as (setting name, n, instance) with the loaded instance.
Instance make_instance(const SimulationConfig& cfg, SizeSetting setting, int n, int index);

RunOptions run_options(const SimulationConfig& cfg);

/// Single-line JSON; rounds are included when `with_rounds` is set.
std::string report_to_json(const InstanceReport& r, bool with_rounds = false);
/// Throws ValidationError on malformed input.
InstanceReport report_from_json(std::string_view line);

/// Header plus one row per report and round with the task timings.
std::string timings_csv(std::span<const InstanceReport> reports);

}  // namespace ikep

namespace ikep {

/// The two-round example as one instance: i1..i4 (ids 0..3, countries
/// 0,1,1,2) arrive in round 1 on the path i1-i2-i3-i4; j1..j3 (ids 4..6,
/// countries 0,1,2) arrive in round 2 with edges j1j2 and j1j3.
Instance walkthrough_instance();
/// "i1".."i4", "j1".."j3" for the ids above.
std::string walkthrough_vertex_name(int id);

}  // namespace ikep
