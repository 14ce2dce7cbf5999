// Acceptance suite: one PASS/FAIL line per criterion, then a summary line.
// The process exits 0 once every criterion has been evaluated; the verdicts
// are in the output.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ikep/config.hpp"
#include "ikep/credit.hpp"
#include "ikep/game.hpp"
#include "ikep/generator.hpp"
#include "ikep/reporting.hpp"
#include "ikep/simulator.hpp"
#include "ikep/solutions.hpp"
#include "ikep/verify.hpp"

using namespace ikep;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

bool close(const std::vector<double>& a, const std::vector<double>& b, double tol = 1e-9) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(std::abs(a[i] - b[i]) <= tol)) return false;
  }
  return true;
}

std::vector<double> next_credits(const RoundRecord& r) {
  std::vector<double> c(r.x.size());
  for (std::size_t p = 0; p < c.size(); ++p) c[p] = r.x[p] - r.s[p];
  return c;
}

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

std::string fmt(double v, int precision = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

Verdict criterion1() {
  Verdict v;
  const auto t0 = Clock::now();
  RunOptions opt;
  opt.rounds = 2;
  const Instance inst = walkthrough_instance();
  const InstanceReport sh = run_instance(inst, Concept::kShapley, Scenario::kLexminCredits, opt);
  const InstanceReport nu = run_instance(inst, Concept::kNucleolus, Scenario::kLexminCredits, opt);
  const double elapsed = seconds_since(t0);

  v.require(sh.rounds.size() == 2 && nu.rounds.size() == 2, "two rounds");
  if (!v.pass) return v;
  v.require(close(sh.rounds[0].x, {2.0 / 3, 8.0 / 3, 2.0 / 3}), "shapley x^1");
  v.require(close(next_credits(sh.rounds[0]), {-1.0 / 3, 2.0 / 3, -1.0 / 3}), "shapley c^2");
  v.require(close(sh.rounds[1].c, {-1.0 / 3, 2.0 / 3, -1.0 / 3}), "shapley ledger c^2");
  v.require(close(sh.rounds[1].x, {1, 1, 0}), "shapley x^2");
  v.require(sh.rounds[1].matching.edges == std::vector<Edge>{{4, 5}}, "shapley M^2 = {j1j2}");
  v.require(close(next_credits(sh.rounds[1]), {0, 0, 0}), "shapley c^3");
  v.require(close(nu.rounds[1].y, {2, 0, 0}), "nucleolus y^2");
  v.require(close(nu.rounds[1].x, {5.0 / 3, 2.0 / 3, -1.0 / 3}), "nucleolus x^2");
  v.require(close(next_credits(nu.rounds[1]), {2.0 / 3, -1.0 / 3, -1.0 / 3}), "nucleolus c^3");
  v.require(elapsed < 1.0, "runtime " + fmt(elapsed) + " s");
  v.detail << (v.pass ? "" : "; ") << "runtime " << fmt(elapsed) << " s";
  return v;
}

Verdict criterion2() {
  Verdict v;
  const CharacteristicFunction v1 = generate_game(testing::fig2_round1());
  const CharacteristicFunction v2 = generate_game(testing::fig2_round2());
  v.require(close(shapley(v1).scaled(2).values, {2.0 / 3, 8.0 / 3, 2.0 / 3}), "shapley round 1");
  v.require(close(shapley(v2).scaled(2).values, {4.0 / 3, 1.0 / 3, 1.0 / 3}), "shapley round 2");

  const TauResult t4 = tau(generate_game(testing::four_cycle()));
  v.require(t4.value && close(t4.value->values, {0.5, 0.5, 0.5, 0.5}), "tau on the 4-cycle");

  const CharacteristicFunction tri = generate_game(testing::triangle());
  v.require(!tau(tri).value && !is_quasibalanced(tri), "tau on the triangle");
  v.require(!benefit(tri).has_value(), "benefit on the triangle");
  v.require(!contribution(tri).has_value(), "contribution on the triangle");

  const BanzhafResult bz = banzhaf(v2);
  v.require(bz.normalized && close(bz.normalized->scaled(2).values, {6.0 / 5, 2.0 / 5, 2.0 / 5}),
            "normalized banzhaf round 2");
  return v;
}

void append(Verdict& v, const verify::SuiteResult& r) {
  v.require(r.passed(), r.name + ": " + std::to_string(r.mismatches) + " mismatches, " + r.first_failure);
  if (r.passed()) v.detail << (v.detail.tellp() > 0 ? ", " : "") << r.name << " " << r.cases << " cases";
}

Verdict criterion3() {
  Verdict v;
  append(v, verify::selections(301, 300, 14));
  append(v, verify::intervals(302, 300, 14));
  return v;
}

Verdict criterion4() {
  Verdict v;
  append(v, verify::nucleolus(401, 100, 10000, 8));
  return v;
}

// Shared desk-scale batch for criteria 5 to 8 and the selection timing of 10.
struct DeskRun {
  SimulationConfig cfg;
  std::vector<InstanceReport> reports;
  AggregateReport agg;
  double seconds = 0.0;
};

DeskRun desk_run() {
  DeskRun d;
  d.cfg.n_values = {4, 5, 6, 7, 8, 9, 10};
  d.cfg.settings = {SizeSetting::kEqual};
  d.cfg.pool_size = 400;
  d.cfg.instances = 20;
  const auto t0 = Clock::now();
  d.reports = run_batch(d.cfg, 1);
  d.seconds = seconds_since(t0);
  d.agg = aggregate(d.reports);
  return d;
}

double metric(const DeskRun& d, Concept k, Scenario s, int n, std::string_view name) {
  const CellSummary* cell = d.agg.find(CellKey{"equal", k, s, n});
  if (cell == nullptr) return std::nan("");
  const Metric* m = cell->find(name);
  return m == nullptr ? std::nan("") : m->value;
}

Verdict criterion5(const DeskRun& d) {
  Verdict v;
  const Scenario targeted[] = {Scenario::kD1, Scenario::kD1Credits, Scenario::kLexmin, Scenario::kLexminCredits,
                               Scenario::kD1Bar, Scenario::kLexminBar};
  int fail_i = 0;
  int checks_i = 0;
  double worst_factor = 1e300;
  int fail_ii = 0;
  int fail_improvement = 0;
  std::vector<double> lexmin, lexmin_c, d1, d1_c;
  for (int n : d.cfg.n_values) {
    for (Concept k : d.cfg.concepts) {
      const double arb = metric(d, k, Scenario::kArbitrary, n, "total_relative_deviation");
      for (Scenario s : targeted) {
        if (is_bar(s) && k != Concept::kBanzhaf) continue;
        const double t = metric(d, k, s, n, "total_relative_deviation");
        if (std::isnan(t) || std::isnan(arb)) continue;
        ++checks_i;
        worst_factor = std::min(worst_factor, t > 0 ? arb / t : 1e300);
        if (!(arb >= 3.0 * t)) ++fail_i;
      }
      const double a = metric(d, k, Scenario::kD1Credits, n, "total_relative_deviation");
      const double b = metric(d, k, Scenario::kLexminCredits, n, "total_relative_deviation");
      if (!(b <= a)) ++fail_ii;
      if (n >= 8 && !(relative_improvement(a, b) > 0.0)) ++fail_improvement;
      lexmin.push_back(metric(d, k, Scenario::kLexmin, n, "total_relative_deviation"));
      lexmin_c.push_back(b);
      d1.push_back(metric(d, k, Scenario::kD1, n, "total_relative_deviation"));
      d1_c.push_back(a);
    }
  }
  v.require(fail_i == 0, "(i) " + std::to_string(fail_i) + "/" + std::to_string(checks_i) +
                             " cells below factor 3, worst factor " + fmt(worst_factor));
  v.require(fail_ii == 0, "(ii) lexmin_c > d1_c in " + std::to_string(fail_ii) + " cells");
  v.require(fail_improvement == 0,
            "(ii) non-positive improvement in " + std::to_string(fail_improvement) + " cells with n >= 8");
  v.require(mean(lexmin_c) < mean(lexmin), "(iii) lexmin_c " + fmt(mean(lexmin_c)) + " vs lexmin " + fmt(mean(lexmin)));
  v.require(mean(d1_c) < mean(d1), "(iii) d1_c " + fmt(mean(d1_c)) + " vs d1 " + fmt(mean(d1)));
  v.require(d.seconds < 7200.0, "runtime");
  // Deviation of the summed initial allocations, reported alongside.
  std::map<Scenario, std::vector<double>> initial;
  for (const auto& r : d.reports) {
    if (!r.aborted) initial[r.scenario].push_back(total_relative_deviation(r.y_star, r.s_star, r.matching_size));
  }
  v.detail << (v.pass ? "" : "; ") << "worst factor " << fmt(worst_factor) << ", means d1 " << fmt(mean(d1))
           << " d1_c " << fmt(mean(d1_c)) << " lexmin " << fmt(mean(lexmin)) << " lexmin_c " << fmt(mean(lexmin_c))
           << ", runtime " << fmt(d.seconds) << " s; sum-of-y deviation";
  for (const auto& [s, xs] : initial) v.detail << " " << to_string(s) << " " << fmt(mean(xs));
  return v;
}

Verdict criterion6(const DeskRun& d) {
  Verdict v;
  std::map<std::pair<int, int>, std::vector<const InstanceReport*>> by_instance;
  for (const auto& r : d.reports) by_instance[{r.n, r.instance}].push_back(&r);
  int unequal_instances = 0;
  double rel_sum = 0.0;
  int rel_count = 0;
  for (const auto& [key, group] : by_instance) {
    const InstanceReport* ref = group.front();
    bool equal = true;
    for (const InstanceReport* r : group) {
      const std::size_t rounds = std::min(ref->rounds.size(), r->rounds.size());
      for (std::size_t h = 0; h < rounds; ++h) equal = equal && ref->rounds[h].mu == r->rounds[h].mu;
      if (!r->aborted && !ref->aborted && ref->matching_size > 0) {
        rel_sum += std::abs(r->matching_size - ref->matching_size) / static_cast<double>(ref->matching_size);
        ++rel_count;
      }
    }
    if (!equal) ++unequal_instances;
  }
  v.require(unequal_instances == 0, std::to_string(unequal_instances) + "/" + std::to_string(by_instance.size()) +
                                        " instances with differing per-round sizes");
  v.detail << (v.pass ? "" : "; ") << "mean relative difference of |M*| " << fmt(100.0 * rel_sum / std::max(rel_count, 1))
           << "%";
  return v;
}

Verdict criterion7(const DeskRun& d) {
  Verdict v;
  std::vector<double> gains;
  for (int n : d.cfg.n_values) {
    std::map<int, std::pair<double, int>> coop;  // instance -> (sum, count)
    std::map<int, int> baseline;
    for (const auto& r : d.reports) {
      if (r.n != n || r.aborted) continue;
      coop[r.instance].first += r.transplants();
      coop[r.instance].second += 1;
      baseline[r.instance] = r.no_cooperation_total;
    }
    double coop_total = 0.0;
    double base_total = 0.0;
    std::vector<double> ratios;
    for (const auto& [i, cs] : coop) {
      const double c = cs.first / cs.second;
      coop_total += c;
      base_total += baseline[i];
      if (baseline[i] > 0) ratios.push_back(c / baseline[i]);
    }
    v.require(coop_total > base_total, "n=" + std::to_string(n) + " cooperation " + fmt(coop_total) +
                                           " vs baseline " + fmt(base_total));
    gains.push_back(mean(ratios));
  }
  for (std::size_t i = 1; i < gains.size(); ++i) {
    v.require(gains[i] >= gains[i - 1], "gain decreases at n=" + std::to_string(d.cfg.n_values[i]));
  }
  v.detail << (v.pass ? "" : "; ") << "gains";
  for (double g : gains) v.detail << " " << fmt(g, 3);
  return v;
}

Verdict criterion8(const DeskRun& d) {
  Verdict v;
  std::vector<double> xs;
  for (int h = 8; h <= 24; ++h) xs.push_back(h);
  std::ostringstream slopes;
  for (int n : d.cfg.n_values) {
    for (Scenario s : {Scenario::kD1Credits, Scenario::kLexminCredits, Scenario::kArbitrary}) {
      std::vector<double> sum(25, 0.0);
      int count = 0;
      for (const auto& r : d.reports) {
        if (r.n != n || r.scenario != s || r.aborted || r.credit_series.size() < 25) continue;
        for (int h = 1; h <= 24; ++h) sum[h] += r.credit_series[h - 1];
        ++count;
      }
      std::vector<double> ys;
      for (int h = 8; h <= 24; ++h) ys.push_back(sum[h] / std::max(count, 1));
      const double b = slope(xs, ys);
      const double eps = 0.05 * mean(ys);
      const std::string tag = "n=" + std::to_string(n) + " " + std::string(to_string(s));
      if (s == Scenario::kArbitrary) {
        v.require(b > 0.0, tag + " slope " + fmt(b));
      } else {
        v.require(b <= eps, tag + " slope " + fmt(b) + " > " + fmt(eps));
      }
      slopes << " " << tag << ":" << fmt(b, 3);
    }
  }
  v.detail << (v.pass ? "" : "; ") << "slopes" << slopes.str();
  return v;
}

std::vector<double> zero_sum(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> c(n);
  for (double& x : c) x = u(rng);
  const double m = mean(c);
  for (double& x : c) x -= m;
  return c;
}

Verdict criterion9() {
  Verdict v;
  std::mt19937_64 rng(901);
  const Concept covariant[] = {Concept::kShapley, Concept::kNucleolus, Concept::kTau, Concept::kBenefit,
                               Concept::kContribution};
  std::map<Concept, int> mismatches;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const CompatibilityGraph g = testing::random_graph(rng, n + 3 + static_cast<int>(rng() % 8), n, 0.3);
    const CharacteristicFunction game = generate_game(g);
    const CreditLedger c(zero_sum(rng, n), 2);
    for (Concept k : covariant) {
      const InitialAllocation a = initial_allocation(game, k, CreditRegime::kAdditive, c);
      const InitialAllocation b = initial_allocation(game, k, CreditRegime::kCreditAdjusted, c);
      const bool same = a.y.has_value() == b.y.has_value() &&
                        (!a.y || close(target_allocation(*a.y, c).values, target_allocation(*b.y, c).values));
      if (!same) ++mismatches[k];
    }
  }
  for (Concept k : covariant) {
    v.require(mismatches[k] == 0, std::string(to_string(k)) + " differs on " + std::to_string(mismatches[k]) + "/50");
  }
  const CharacteristicFunction v2 = generate_game(testing::fig2_round2());
  const CreditLedger c({1, -1, 0}, 2);
  const InitialAllocation a = initial_allocation(v2, Concept::kBanzhaf, CreditRegime::kAdditive, c);
  const InitialAllocation b = initial_allocation(v2, Concept::kBanzhaf, CreditRegime::kCreditAdjusted, c);
  const std::vector<double> xa = target_allocation(*a.y, c).values;
  const std::vector<double> xb = target_allocation(*b.y, c).values;
  v.require(close(xa, {11.0 / 5, -3.0 / 5, 2.0 / 5}) && close(xb, {2, -2.0 / 5, 2.0 / 5}) && !close(xa, xb),
            "banzhaf witness");
  v.detail << (v.pass ? "" : "; ") << "banzhaf witness (" << fmt(xa[0]) << "," << fmt(xa[1]) << "," << fmt(xa[2])
           << ") vs (" << fmt(xb[0]) << "," << fmt(xb[1]) << "," << fmt(xb[2]) << ")";
  return v;
}

Verdict criterion10(const DeskRun& d) {
  Verdict v;
  SimulationConfig cfg;
  cfg.pool_size = 2000;
  GameOptions opt;
  opt.max_countries = kHardMaxCountries;
  std::vector<double> times;
  for (int n = 12; n <= 15; ++n) {
    std::vector<double> per_instance;
    for (int i = 0; i < 3; ++i) {
      const Instance inst = make_instance(cfg, SizeSetting::kEqual, n, i);
      const CompatibilityGraph g = round_graph(inst.graph, initial_pool(inst.graph));
      double best = 1e300;
      for (int rep = 0; rep < 3; ++rep) {
        const auto t0 = Clock::now();
        const CharacteristicFunction game = generate_game(g, opt);
        best = std::min(best, seconds_since(t0));
        if (game.n() != n) best = 1e300;
      }
      per_instance.push_back(best);
    }
    std::sort(per_instance.begin(), per_instance.end());
    times.push_back(per_instance[1]);
  }
  std::ostringstream ratios;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double r = times[i] / times[i - 1];
    ratios << " " << fmt(r, 3);
    v.require(r >= 1.6 && r <= 2.6, "game ratio n=" + std::to_string(11 + i) + "->" + std::to_string(12 + i) +
                                        " " + fmt(r, 3));
  }

  auto per_round = [&](bool lexmin, bool total) {
    std::vector<double> xs;
    for (const auto& r : d.reports) {
      if (r.aborted || r.scenario == Scenario::kArbitrary || is_bar(r.scenario)) continue;
      if (uses_lexmin(r.scenario) != lexmin) continue;
      for (const RoundTimings& t : r.timings) xs.push_back(total ? t.total() : t.selection);
    }
    return mean(xs);
  };
  const double total_ratio = per_round(true, true) / per_round(false, true);
  const double selection_ratio = per_round(true, false) / per_round(false, false);
  v.require(total_ratio < 1.15, "lexmin/d1 per-round time " + fmt(total_ratio, 3));
  v.detail << (v.pass ? "" : "; ") << "game ratios" << ratios.str() << ", lexmin/d1 per-round time "
           << fmt(total_ratio, 3) << " (selection only " << fmt(selection_ratio, 3) << ")";
  return v;
}

}  // namespace

int main() {
  int passed = 0;
  int evaluated = 0;
  auto report = [&](int id, const std::string& name, const std::function<Verdict()>& run) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    ++evaluated;
    if (v.pass) ++passed;
    std::printf("[%s] criterion %d %s: %s\n", v.pass ? "PASS" : "FAIL", id, name.c_str(), v.detail.str().c_str());
    std::fflush(stdout);
  };

  report(1, "walkthrough", criterion1);
  report(2, "concept fixtures", criterion2);
  report(3, "selection and interval oracles", criterion3);
  report(4, "nucleolus validity", criterion4);

  DeskRun desk;
  std::string desk_error;
  try {
    desk = desk_run();
  } catch (const std::exception& e) {
    desk_error = e.what();
  }
  auto with_desk = [&](Verdict (*f)(const DeskRun&)) {
    return [&, f] {
      if (!desk_error.empty()) throw std::runtime_error("desk batch: " + desk_error);
      return f(desk);
    };
  };
  report(5, "desk-scale deviations", with_desk(criterion5));
  report(6, "matching-size neutrality", with_desk(criterion6));
  report(7, "cooperation gain", with_desk(criterion7));
  report(8, "credit accumulation", with_desk(criterion8));
  report(9, "credit regimes", criterion9);
  report(10, "performance shape", with_desk(criterion10));

  std::printf("acceptance complete: %d/%d criteria passed\n", passed, evaluated);
  return 0;
}
