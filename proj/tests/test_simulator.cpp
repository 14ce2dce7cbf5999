#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "fixtures.hpp"
#include "ikep/config.hpp"
#include "ikep/error.hpp"
#include "ikep/generator.hpp"
#include "ikep/instance_io.hpp"
#include "ikep/simulator.hpp"

using namespace ikep;
using doctest::Approx;

namespace {

void check_values(const std::vector<double>& got, const std::vector<double>& want, double tol = 1e-9) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= tol);
}

std::vector<double> next_credits(const RoundRecord& r) {
  std::vector<double> c(r.x.size());
  for (std::size_t p = 0; p < c.size(); ++p) c[p] = r.x[p] - r.s[p];
  return c;
}

Instance walkthrough() { return Instance{ikep::testing::fig2_two_rounds(), "fixture", 0}; }

RunOptions two_rounds() {
  RunOptions opt;
  opt.rounds = 2;
  return opt;
}

SimulationConfig small_config() {
  SimulationConfig cfg;
  cfg.n_values = {4};
  cfg.pool_size = 60;
  cfg.rounds = 6;
  cfg.instances = 2;
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("walkthrough under shapley with credits") {
  const InstanceReport r = run_instance(walkthrough(), Concept::kShapley, Scenario::kLexminCredits, two_rounds());
  REQUIRE(r.rounds.size() == 2);
  check_values(r.rounds[0].x, {2.0 / 3, 8.0 / 3, 2.0 / 3});
  check_values(next_credits(r.rounds[0]), {-1.0 / 3, 2.0 / 3, -1.0 / 3});
  check_values(r.rounds[1].c, {-1.0 / 3, 2.0 / 3, -1.0 / 3});
  check_values(r.rounds[1].x, {1, 1, 0});
  CHECK(r.rounds[1].matching.edges == std::vector<Edge>{{4, 5}});
  check_values(next_credits(r.rounds[1]), {0, 0, 0});
  check_values(r.credit_series, {0, 4.0 / 3, 0});
  CHECK(r.matching_size == 3);
  CHECK(r.s_star == MatchedCounts{2, 3, 1});
  check_values(r.x_star, {5.0 / 3, 11.0 / 3, 2.0 / 3});
}

TEST_CASE("walkthrough under the nucleolus with credits") {
  const InstanceReport r = run_instance(walkthrough(), Concept::kNucleolus, Scenario::kLexminCredits, two_rounds());
  REQUIRE(r.rounds.size() == 2);
  check_values(r.rounds[0].x, {2.0 / 3, 8.0 / 3, 2.0 / 3});
  check_values(r.rounds[1].y, {2, 0, 0});
  check_values(r.rounds[1].x, {5.0 / 3, 2.0 / 3, -1.0 / 3});
  check_values(next_credits(r.rounds[1]), {2.0 / 3, -1.0 / 3, -1.0 / 3});
}

TEST_CASE("walkthrough stability against the summed game") {
  const InstanceReport r = run_instance(walkthrough(), Concept::kShapley, Scenario::kLexminCredits, two_rounds());
  REQUIRE(r.has_stability);
  // Doubled summed game: v(1)=0, v(2)=2, v(3)=0, v(12)=4, v(13)=2, v(23)=2, v(N)=6.
  const double v[8] = {0, 0, 2, 4, 0, 2, 2, 6};
  auto worst = [&](const std::vector<double>& x) {
    double m = 1e300;
    for (int s = 1; s < 7; ++s) {
      double xs = 0;
      for (int p = 0; p < 3; ++p) {
        if (s >> p & 1) xs += x[p];
      }
      m = std::min(m, xs - v[s]);
    }
    return m;
  };
  CHECK(r.stability_initial == Approx(worst(r.y_star)));
  CHECK(r.stability_solution == Approx(worst({2, 3, 1})));
  CHECK(r.accumulated_core_nonempty);
}

TEST_CASE("bar scenarios require banzhaf") {
  CHECK_THROWS_AS(run_instance(walkthrough(), Concept::kShapley, Scenario::kD1Bar, two_rounds()), ValidationError);
  const InstanceReport r = run_instance(walkthrough(), Concept::kBanzhaf, Scenario::kLexminBar, two_rounds());
  CHECK(r.rounds.size() == 2);
}

TEST_CASE("arbitrary runs keep a shadow ledger per concept") {
  const Concept concepts[] = {Concept::kShapley, Concept::kNucleolus};
  const auto reports = run_arbitrary(walkthrough(), concepts, two_rounds());
  REQUIRE(reports.size() == 2);
  for (const InstanceReport& r : reports) {
    CHECK(r.scenario == Scenario::kArbitrary);
    CHECK(r.rounds[0].mu == 2);
    CHECK(r.rounds[1].mu == 1);
    for (const RoundRecord& rec : r.rounds) check_values(rec.c, {0, 0, 0});
    CHECK(r.credit_series.size() == 3);
  }
  CHECK(reports[0].solution == Concept::kShapley);
  CHECK(reports[1].solution == Concept::kNucleolus);
}

TEST_CASE("no-cooperation baseline") {
  RunOptions one;
  one.rounds = 1;
  CHECK(no_cooperation_baseline(Instance{ikep::testing::fig1_graph(), "fixture", 0}, one).total == 4);
  CHECK(no_cooperation_baseline(Instance{ikep::testing::fig2_round1(), "fixture", 0}, one).total == 2);
  const Baseline b = no_cooperation_baseline(walkthrough(), two_rounds());
  CHECK(b.per_round == std::vector<int>{2, 0});
  CompatibilityGraph single(1, {ikep::testing::vtx(0, 0), ikep::testing::vtx(1, 0), ikep::testing::vtx(2, 0)},
                            {{0, 1}, {1, 2}});
  const Instance solo{single, "fixture", 0};
  CHECK(no_cooperation_baseline(solo, one).total ==
        run_instance(solo, Concept::kShapley, Scenario::kD1, one).transplants());
}

TEST_CASE("pool dynamics") {
  using ikep::testing::vtx;
  std::vector<Vertex> vs{vtx(0, 0), vtx(1, 1), vtx(2, 0)};
  vs.push_back(Vertex{3, 1, 2, {}, {}, {}});
  const CompatibilityGraph g(2, vs, {{0, 1}});
  SUBCASE("all matched leaves the arrivals") {
    const CompatibilityGraph two(2, {vtx(0, 0), vtx(1, 1), Vertex{2, 0, 2, {}, {}, {}}}, {{0, 1}});
    CHECK(advance_pool(two, {0, 1}, Matching{{{0, 1}}}, 1) == std::vector<int>{2});
  }
  SUBCASE("an unmatched pair waits four rounds") {
    std::vector<int> present = initial_pool(g);
    CHECK(present == std::vector<int>{0, 1, 2});
    present = advance_pool(g, present, Matching{{{0, 1}}}, 1);
    CHECK(present == std::vector<int>{2, 3});
    present = advance_pool(g, present, Matching{}, 2);
    present = advance_pool(g, present, Matching{}, 3);
    CHECK(present == std::vector<int>{2, 3});
    present = advance_pool(g, present, Matching{}, 4);
    CHECK(present == std::vector<int>{3});
    present = advance_pool(g, present, Matching{}, 5);
    CHECK(present.empty());
  }
  SUBCASE("generated runs respect the age bound") {
    const SimulationConfig cfg = small_config();
    const CompatibilityGraph inst = generate_instance(cfg, SizeSetting::kEqual, 4, 0);
    std::vector<int> present = initial_pool(inst);
    for (int h = 1; h <= cfg.rounds; ++h) {
      for (int i : present) CHECK(h - inst.vertices()[i].arrival_round < cfg.max_wait_rounds);
      const CompatibilityGraph round = round_graph(inst, present);
      present = advance_pool(inst, present, maximum_matching(round), h);
    }
  }
}

TEST_CASE("instance generation") {
  SimulationConfig cfg = small_config();
  cfg.pool_size = 400;
  CHECK(country_sizes(SizeSetting::kEqual, 4, 400) == std::vector<int>{100, 100, 100, 100});
  CHECK(country_sizes(SizeSetting::kVarying, 6, 600) == std::vector<int>{50, 50, 100, 100, 150, 150});
  CHECK(country_sizes(SizeSetting::kEqual, 3, 10) == std::vector<int>{4, 3, 3});
  CHECK_THROWS_AS(country_sizes(SizeSetting::kEqual, 11, 10), ValidationError);

  const CompatibilityGraph a = generate_instance(cfg, SizeSetting::kEqual, 4, 3);
  const CompatibilityGraph b = generate_instance(cfg, SizeSetting::kEqual, 4, 3);
  CHECK(graph_to_json(a) == graph_to_json(b));
  CHECK(graph_to_json(a) != graph_to_json(generate_instance(cfg, SizeSetting::kEqual, 4, 4)));
  CHECK(a.size() == 400);
  CHECK(a.country_sizes() == std::vector<int>{100, 100, 100, 100});
  int first = 0;
  for (const Vertex& v : a.vertices()) {
    CHECK(v.arrival_round >= 1);
    CHECK(v.arrival_round <= cfg.rounds);
    first += v.arrival_round == 1;
  }
  CHECK(first == 100);
  for (const Edge& e : a.edges()) {
    const Vertex& u = a.vertices()[a.index_of(e.u)];
    const Vertex& w = a.vertices()[a.index_of(e.v)];
    CHECK(blood_compatible(*u.donor_blood, *w.patient_blood));
    CHECK(blood_compatible(*w.donor_blood, *u.patient_blood));
  }
  CHECK(graph_from_json(graph_to_json(a)) == a);
}

TEST_CASE("batch accounting") {
  SimulationConfig cfg = small_config();
  cfg.concepts = {Concept::kShapley, Concept::kBanzhaf};
  cfg.scenarios = {Scenario::kD1Credits, Scenario::kLexminCredits};
  cfg.n_values = {4, 5};
  cfg.instances = 3;
  cfg.rounds = 2;
  CHECK(run_batch(cfg).size() == 24);
  CHECK(runs_per_cell(cfg) == 4);
  CHECK(runs_per_cell(SimulationConfig{}) == 27);
  const SimulationConfig paper = paper_config();
  CHECK(static_cast<long>(paper.settings.size()) * runs_per_cell(paper) *
            static_cast<long>(paper.n_values.size()) * paper.instances ==
        64800);
}

TEST_CASE("batch determinism and ledger identity") {
  SimulationConfig cfg = small_config();
  cfg.concepts = {Concept::kShapley, Concept::kNucleolus, Concept::kBanzhaf};
  const auto serial = run_batch(cfg, 1);
  const auto parallel = run_batch(cfg, 3);
  REQUIRE(serial.size() == parallel.size());
  REQUIRE(serial.size() == static_cast<std::size_t>(cfg.instances * runs_per_cell(cfg) + cfg.instances * 2));
  std::map<int, std::vector<int>> sizes;
  for (std::size_t k = 0; k < serial.size(); ++k) {
    CHECK(report_to_json(serial[k], true) == report_to_json(parallel[k], true));
    const InstanceReport& r = serial[k];
    CHECK_FALSE(r.aborted);
    CHECK(r.rounds.size() == static_cast<std::size_t>(cfg.rounds));
    std::vector<int> mu;
    for (const RoundRecord& rec : r.rounds) mu.push_back(rec.mu);
    // The arbitrary reports of one instance share their matchings.
    if (r.scenario == Scenario::kArbitrary) {
      auto [it, fresh] = sizes.emplace(r.instance, mu);
      if (!fresh) CHECK(it->second == mu);
    }
    double xs = 0;
    for (double x : r.x_star) xs += x;
    CHECK(xs == Approx(r.transplants()));
    CHECK(r.transplants() >= r.no_cooperation_total);
    if (uses_credits(r.scenario) || r.scenario == Scenario::kArbitrary) {
      // Ledger identity: the recorded credits of round h are the running sum of y - s.
      std::vector<double> c(r.n, 0.0);
      for (const RoundRecord& rec : r.rounds) {
        if (uses_credits(r.scenario)) check_values(rec.c, c, 1e-7);
        for (int p = 0; p < r.n; ++p) c[p] += rec.y[p] - rec.s[p];
      }
      double mag = 0;
      for (double x : c) mag += std::abs(x);
      CHECK(r.credit_series.back() == Approx(mag));
    }
  }
}

TEST_CASE("report serialization") {
  const InstanceReport r = run_instance(walkthrough(), Concept::kShapley, Scenario::kLexminCredits, two_rounds());
  const InstanceReport back = report_from_json(report_to_json(r, true));
  CHECK(report_to_json(back, true) == report_to_json(r, true));
  CHECK(back.rounds == r.rounds);
  const InstanceReport brief = report_from_json(report_to_json(r));
  CHECK(brief.rounds.size() == 2);
  CHECK(brief.rounds[1].mu == 1);
  CHECK_THROWS_AS(report_from_json("{\"setting\": 1}"), ValidationError);
  const std::string csv = timings_csv(std::vector<InstanceReport>{r});
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("config schema") {
  const SimulationConfig d = config_from_json("{}");
  CHECK(d == SimulationConfig{});
  CHECK(config_from_json(config_to_json(paper_config())) == paper_config());
  try {
    config_from_json(R"({"pool": 3, "rounds": 0, "concepts": ["shapley", "owen"], "generator": {"pra_frequencies": {"x": 1}}})");
    FAIL("expected a schema error");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("pool") != std::string::npos);
    CHECK(msg.find("rounds") != std::string::npos);
    CHECK(msg.find("owen") != std::string::npos);
    CHECK(msg.find("pra_frequencies.x") != std::string::npos);
  }
  CHECK_THROWS_AS(config_from_json("not json"), ValidationError);
}
