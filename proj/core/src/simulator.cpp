#include "ikep/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ikep/error.hpp"
#include "ikep/game.hpp"
#include "ikep/generator.hpp"
#include "ikep/instance_io.hpp"
#include "ikep/matching.hpp"

namespace ikep {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Per-concept state of one run.
struct Track {
  InstanceReport report;
  CreditLedger ledger;
  std::vector<double> shadow;  // sum of y - s so far

  Track(const Instance& inst, Concept c, Scenario s) : ledger(inst.graph.n_countries()) {
    const int n = inst.graph.n_countries();
    report.setting = inst.setting;
    report.solution = c;
    report.scenario = s;
    report.n = n;
    report.instance = inst.index;
    report.x_star.assign(n, 0.0);
    report.y_star.assign(n, 0.0);
    report.s_star.assign(n, 0);
    report.credit_series.push_back(0.0);
    shadow.assign(n, 0.0);
  }
};

void audit_round(InstanceReport& r, const CharacteristicFunction& v) {
  const bool convex = is_convex(v);
  const TauResult t = tau(v);
  bool equal = false;
  if (t.value) {
    const auto b = benefit(v);
    equal = b.has_value();
    for (int p = 0; b && p < v.n(); ++p) equal = equal && std::abs(b->values[p] - t.value->values[p]) <= 1e-9;
  }
  r.convex.push_back(convex);
  r.quasibalanced.push_back(t.profile.quasibalanced);
  r.tau_equals_benefit.push_back(equal);
}

void finish_stability(InstanceReport& r, const CharacteristicFunction& acc) {
  CharacteristicFunction doubled(acc.n());
  for (Coalition s = 1; s <= acc.grand(); ++s) doubled[s] = 2.0 * acc[s];
  std::vector<double> s_star(r.s_star.begin(), r.s_star.end());
  r.stability_initial = min_excess(doubled, r.y_star);
  r.stability_solution = min_excess(doubled, s_star);
  r.accumulated_core_nonempty = acc.n() < 2 || core_nonempty(doubled);
  r.has_stability = true;
}

// Runs the rounds for one selection rule. For the arbitrary scenario there is
// one track per concept; otherwise exactly one.
std::vector<InstanceReport> simulate(const Instance& inst, std::span<const Concept> concepts, Scenario scenario,
                                     const RunOptions& opt) {
  const CompatibilityGraph& g = inst.graph;
  const int n = g.n_countries();
  std::vector<Track> tracks;
  for (Concept c : concepts) tracks.emplace_back(inst, c, scenario);
  const CreditRegime regime = is_bar(scenario) ? CreditRegime::kCreditAdjusted : CreditRegime::kAdditive;
  const CreditLedger no_credits(n);
  GameOptions game_options;
  game_options.max_countries = kHardMaxCountries;

  CharacteristicFunction accumulated(n);
  auto t0 = Clock::now();
  std::vector<int> present = initial_pool(g);
  double prep = seconds_since(t0);

  for (int h = 1; h <= opt.rounds; ++h) {
    RoundTimings shared;
    shared.prep = prep;
    t0 = Clock::now();
    const CompatibilityGraph round = round_graph(g, present);
    shared.graph = seconds_since(t0);
    t0 = Clock::now();
    const CharacteristicFunction v = generate_game(round, game_options);
    shared.game = seconds_since(t0);
    if (opt.stability) {
      for (Coalition s = 1; s <= v.grand(); ++s) accumulated[s] += v[s];
    }

    // Targets.
    std::vector<std::vector<double>> ys(tracks.size());
    std::vector<std::vector<double>> xs(tracks.size());
    std::vector<double> solution_time(tracks.size(), 0.0);
    for (std::size_t k = 0; k < tracks.size(); ++k) {
      Track& tr = tracks[k];
      if (tr.report.aborted) continue;
      t0 = Clock::now();
      const InitialAllocation ia = initial_allocation(v, tr.report.solution, regime,
                                                      uses_credits(scenario) ? tr.ledger : no_credits);
      solution_time[k] = seconds_since(t0);
      if (ia.fallback) ++tr.report.tau_fallbacks;
      if (ia.undefined) {
        tr.report.aborted = true;
        tr.report.diagnostic = std::string(to_string(ia.used)) + " value undefined in round " +
                               std::to_string(h) + " (zero denominator)";
        continue;
      }
      ys[k] = ia.y->values;
      xs[k] = uses_credits(scenario) ? target_allocation(*ia.y, tr.ledger).values : ia.y->values;
      tr.report.rounds.push_back({});
      tr.report.rounds.back().fallback = ia.fallback;
      tr.report.rounds.back().solution = std::string(to_string(ia.used));
    }
    if (std::all_of(tracks.begin(), tracks.end(), [](const Track& t) { return t.report.aborted; })) break;

    // Selection.
    t0 = Clock::now();
    Matching m;
    if (scenario == Scenario::kArbitrary) {
      m = arbitrary_maximum_matching(round);
    } else {
      IntervalMatcher matcher(round);
      const std::vector<double>& x = xs.front();
      m = uses_lexmin(scenario) ? lexmin_matching(matcher, x, opt.lexmin).matching
                                : min_d1_matching(matcher, x).matching;
    }
    const MatchedCounts s = matched_counts(round, m);
    shared.selection = seconds_since(t0);

    for (std::size_t k = 0; k < tracks.size(); ++k) {
      Track& tr = tracks[k];
      if (tr.report.aborted) continue;
      InstanceReport& r = tr.report;
      RoundRecord& rec = r.rounds.back();
      rec.round = h;
      rec.mu = static_cast<int>(m.size());
      rec.y = ys[k];
      rec.c = tr.ledger.credits();
      rec.x = xs[k];
      rec.matching = m;
      rec.s = s;
      RoundTimings t = shared;
      t.solution = solution_time[k];
      r.timings.push_back(t);
      audit_round(r, v);
      for (int p = 0; p < n; ++p) {
        r.x_star[p] += xs[k][p];
        r.y_star[p] += ys[k][p];
        r.s_star[p] += s[p];
        tr.shadow[p] += ys[k][p] - s[p];
      }
      r.matching_size += static_cast<int>(m.size());
      if (uses_credits(scenario)) tr.ledger.advance(xs[k], s);
      double mag = 0.0;
      for (double c : tr.shadow) mag += std::abs(c);
      r.credit_series.push_back(mag);
    }

    t0 = Clock::now();
    if (h < opt.rounds) present = advance_pool(g, present, m, h, opt.max_wait_rounds);
    prep = seconds_since(t0);
  }

  std::vector<InstanceReport> out;
  for (Track& tr : tracks) {
    if (opt.stability && !tr.report.aborted) finish_stability(tr.report, accumulated);
    out.push_back(std::move(tr.report));
  }
  return out;
}

}  // namespace

std::vector<int> initial_pool(const CompatibilityGraph& g) {
  std::vector<int> present;
  for (int i = 0; i < g.size(); ++i) {
    if (g.vertices()[i].arrival_round == 1) present.push_back(i);
  }
  return present;
}

std::vector<int> advance_pool(const CompatibilityGraph& g, const std::vector<int>& present, const Matching& m,
                              int h, int max_wait_rounds) {
  std::vector<char> matched(g.size(), 0);
  for (const Edge& e : m.edges) {
    const int a = g.index_of(e.u);
    const int b = g.index_of(e.v);
    if (a < 0 || b < 0) throw ValidationError("matching references a vertex outside the instance");
    matched[a] = matched[b] = 1;
  }
  std::vector<int> next;
  for (int i : present) {
    if (matched[i]) continue;
    // Present since arrival; after max_wait_rounds rounds the pair leaves.
    if (h - g.vertices()[i].arrival_round + 1 >= max_wait_rounds) continue;
    next.push_back(i);
  }
  for (int i = 0; i < g.size(); ++i) {
    if (g.vertices()[i].arrival_round == h + 1) next.push_back(i);
  }
  std::sort(next.begin(), next.end());
  return next;
}

CompatibilityGraph round_graph(const CompatibilityGraph& g, const std::vector<int>& present) {
  std::vector<char> in(g.size(), 0);
  for (int i : present) in[i] = 1;
  std::vector<Vertex> vertices;
  vertices.reserve(present.size());
  std::vector<Edge> edges;
  for (int i : present) {
    vertices.push_back(g.vertices()[i]);
    for (int j : g.neighbors(i)) {
      if (j > i && in[j]) edges.emplace_back(g.vertices()[i].id, g.vertices()[j].id);
    }
  }
  return CompatibilityGraph(g.n_countries(), std::move(vertices), std::move(edges));
}

InstanceReport run_instance(const Instance& inst, Concept solution, Scenario scenario, const RunOptions& opt) {
  if (is_bar(scenario) && solution != Concept::kBanzhaf) {
    throw ValidationError(std::string(to_string(scenario)) + " requires the banzhaf concept");
  }
  const Concept one[] = {solution};
  return std::move(simulate(inst, one, scenario, opt).front());
}

std::vector<InstanceReport> run_arbitrary(const Instance& inst, std::span<const Concept> concepts,
                                          const RunOptions& opt) {
  return simulate(inst, concepts, Scenario::kArbitrary, opt);
}

Baseline no_cooperation_baseline(const Instance& inst, const RunOptions& opt) {
  const CompatibilityGraph& g = inst.graph;
  Baseline out;
  std::vector<int> present = initial_pool(g);
  for (int h = 1; h <= opt.rounds; ++h) {
    const CompatibilityGraph round = round_graph(g, present);
    Matching m;
    for (int p = 0; p < g.n_countries(); ++p) {
      const Matching internal = maximum_matching(induced_subgraph(round, Coalition{1} << p));
      m.edges.insert(m.edges.end(), internal.edges.begin(), internal.edges.end());
    }
    std::sort(m.edges.begin(), m.edges.end());
    out.per_round.push_back(2 * static_cast<int>(m.size()));
    out.total += out.per_round.back();
    if (h < opt.rounds) present = advance_pool(g, present, m, h, opt.max_wait_rounds);
  }
  return out;
}

int runs_per_cell(const SimulationConfig& cfg) {
  int runs = 0;
  for (Scenario s : cfg.scenarios) {
    if (s == Scenario::kArbitrary || is_bar(s)) {
      runs += 1;
    } else {
      runs += static_cast<int>(cfg.concepts.size());
    }
  }
  return runs;
}

RunOptions run_options(const SimulationConfig& cfg) {
  RunOptions opt;
  opt.rounds = cfg.rounds;
  opt.max_wait_rounds = cfg.max_wait_rounds;
  opt.stability = cfg.stability;
  return opt;
}

Instance make_instance(const SimulationConfig& cfg, SizeSetting setting, int n, int index) {
  Instance inst;
  inst.index = index;
  if (!cfg.instance_files.empty()) {
    inst.graph = load_graph(cfg.instance_files.at(index));
    inst.setting = "file";
  } else {
    inst.graph = generate_instance(cfg, setting, n, index);
    inst.setting = std::string(to_string(setting));
  }
  return inst;
}

std::vector<InstanceReport> run_batch(const SimulationConfig& cfg, int parallel,
                                      const std::function<void(int, int)>& progress) {
  cfg.validate();
  struct Cell {
    SizeSetting setting;
    int n;
    int index;
  };
  std::vector<Cell> cells;
  if (!cfg.instance_files.empty()) {
    for (int i = 0; i < cfg.instances; ++i) cells.push_back({SizeSetting::kEqual, 0, i});
  } else {
    for (SizeSetting s : cfg.settings) {
      for (int n : cfg.n_values) {
        for (int i = 0; i < cfg.instances; ++i) cells.push_back({s, n, i});
      }
    }
  }
  const RunOptions opt = run_options(cfg);
  std::vector<std::vector<InstanceReport>> results(cells.size());

  auto run_cell = [&](const Cell& c) {
    const Instance inst = make_instance(cfg, c.setting, c.n, c.index);
    const int baseline = no_cooperation_baseline(inst, opt).total;
    std::vector<InstanceReport> out;
    for (Scenario s : cfg.scenarios) {
      if (s == Scenario::kArbitrary) {
        for (InstanceReport& r : run_arbitrary(inst, cfg.concepts, opt)) out.push_back(std::move(r));
      } else if (is_bar(s)) {
        out.push_back(run_instance(inst, Concept::kBanzhaf, s, opt));
      } else {
        for (Concept k : cfg.concepts) out.push_back(run_instance(inst, k, s, opt));
      }
    }
    for (InstanceReport& r : out) r.no_cooperation_total = baseline;
    return out;
  };

  std::atomic<std::size_t> next{0};
  std::atomic<int> done{0};
  std::mutex mu;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= cells.size()) return;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (failure) return;
      }
      try {
        results[k] = run_cell(cells[k]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        return;
      }
      const int d = ++done;
      if (progress) {
        std::lock_guard<std::mutex> lock(mu);
        progress(d, static_cast<int>(cells.size()));
      }
    }
  };
  const int threads = std::max(1, std::min<int>(parallel, static_cast<int>(cells.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<InstanceReport> all;
  for (auto& r : results) {
    for (InstanceReport& x : r) all.push_back(std::move(x));
  }
  return all;
}

std::string report_to_json(const InstanceReport& r, bool with_rounds) {
  nlohmann::ordered_json j;
  j["setting"] = r.setting;
  j["concept"] = std::string(to_string(r.solution));
  j["scenario"] = std::string(to_string(r.scenario));
  j["n"] = r.n;
  j["instance"] = r.instance;
  j["aborted"] = r.aborted;
  j["diagnostic"] = r.diagnostic;
  j["matching_size"] = r.matching_size;
  j["no_cooperation_total"] = r.no_cooperation_total;
  j["x_star"] = r.x_star;
  j["y_star"] = r.y_star;
  j["s_star"] = r.s_star;
  j["credit_series"] = r.credit_series;
  std::vector<int> sizes;
  for (const RoundRecord& rec : r.rounds) sizes.push_back(rec.mu);
  j["round_sizes"] = sizes;
  j["convex"] = r.convex;
  j["quasibalanced"] = r.quasibalanced;
  j["tau_equals_benefit"] = r.tau_equals_benefit;
  j["tau_fallbacks"] = r.tau_fallbacks;
  j["has_stability"] = r.has_stability;
  j["stability_initial"] = r.stability_initial;
  j["stability_solution"] = r.stability_solution;
  j["accumulated_core_nonempty"] = r.accumulated_core_nonempty;
  if (with_rounds) {
    nlohmann::ordered_json rounds = nlohmann::ordered_json::array();
    for (const RoundRecord& rec : r.rounds) rounds.push_back(nlohmann::ordered_json::parse(to_jsonl(rec)));
    j["rounds"] = std::move(rounds);
  }
  return j.dump();
}

InstanceReport report_from_json(std::string_view line) {
  try {
    const nlohmann::json j = nlohmann::json::parse(line);
    InstanceReport r;
    r.setting = j.at("setting").get<std::string>();
    const auto c = parse_concept(j.at("concept").get<std::string>());
    const auto s = parse_scenario(j.at("scenario").get<std::string>());
    if (!c || !s) throw ValidationError("report names an unknown concept or scenario");
    r.solution = *c;
    r.scenario = *s;
    r.n = j.at("n").get<int>();
    r.instance = j.at("instance").get<int>();
    r.aborted = j.at("aborted").get<bool>();
    r.diagnostic = j.at("diagnostic").get<std::string>();
    r.matching_size = j.at("matching_size").get<int>();
    r.no_cooperation_total = j.at("no_cooperation_total").get<int>();
    r.x_star = j.at("x_star").get<std::vector<double>>();
    r.y_star = j.at("y_star").get<std::vector<double>>();
    r.s_star = j.at("s_star").get<std::vector<int>>();
    r.credit_series = j.at("credit_series").get<std::vector<double>>();
    r.convex = j.at("convex").get<std::vector<bool>>();
    r.quasibalanced = j.at("quasibalanced").get<std::vector<bool>>();
    r.tau_equals_benefit = j.at("tau_equals_benefit").get<std::vector<bool>>();
    r.tau_fallbacks = j.at("tau_fallbacks").get<int>();
    r.has_stability = j.at("has_stability").get<bool>();
    r.stability_initial = j.at("stability_initial").get<double>();
    r.stability_solution = j.at("stability_solution").get<double>();
    r.accumulated_core_nonempty = j.at("accumulated_core_nonempty").get<bool>();
    if (j.contains("rounds")) {
      for (const auto& rec : j["rounds"]) r.rounds.push_back(round_record_from_json(rec.dump()));
    } else {
      for (int mu : j.at("round_sizes").get<std::vector<int>>()) {
        RoundRecord rec;
        rec.round = static_cast<int>(r.rounds.size()) + 1;
        rec.mu = mu;
        r.rounds.push_back(std::move(rec));
      }
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed report: ") + e.what());
  }
}

std::string timings_csv(std::span<const InstanceReport> reports) {
  std::ostringstream out;
  out << "setting,concept,scenario,n,instance,round,prep,graph,game,solution,selection,total\n";
  out.precision(9);
  for (const InstanceReport& r : reports) {
    for (std::size_t h = 0; h < r.timings.size(); ++h) {
      const RoundTimings& t = r.timings[h];
      out << r.setting << ',' << to_string(r.solution) << ',' << to_string(r.scenario) << ',' << r.n << ','
          << r.instance << ',' << h + 1 << ',' << t.prep << ',' << t.graph << ',' << t.game << ',' << t.solution
          << ',' << t.selection << ',' << t.total() << '\n';
    }
  }
  return out.str();
}

}  // namespace ikep

namespace ikep {

Instance walkthrough_instance() {
  auto at = [](int id, int country, int round) { return Vertex{id, country, round, {}, {}, {}}; };
  CompatibilityGraph g(3,
                       {at(0, 0, 1), at(1, 1, 1), at(2, 1, 1), at(3, 2, 1), at(4, 0, 2), at(5, 1, 2), at(6, 2, 2)},
                       {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {4, 6}});
  return Instance{std::move(g), "walkthrough", 0};
}

std::string walkthrough_vertex_name(int id) {
  return id < 4 ? "i" + std::to_string(id + 1) : "j" + std::to_string(id - 3);
}

}  // namespace ikep
