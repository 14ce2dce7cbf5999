#include "ikep/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ikep/balancing.hpp"
#include "ikep/matching.hpp"
#include "ikep/oracle.hpp"
#include "ikep/solutions.hpp"

namespace ikep::verify {

namespace {

void fail(SuiteResult& r, int trial, const std::string& what) {
  if (r.mismatches++ == 0) r.first_failure = "case " + std::to_string(trial) + ": " + what;
}

std::string show(const std::vector<double>& v) {
  std::ostringstream o;
  o << '(';
  for (std::size_t i = 0; i < v.size(); ++i) o << (i ? ", " : "") << v[i];
  o << ')';
  return o.str();
}

int draw(SplitMix64& rng, int lo, int hi) { return static_cast<int>(rng.uniform_int(lo, hi)); }

}  // namespace

CompatibilityGraph random_partitioned_graph(SplitMix64& rng, int n_vertices, int n_countries, double p) {
  std::vector<int> country(n_vertices);
  for (int i = 0; i < n_vertices; ++i) country[i] = i < n_countries ? i : draw(rng, 0, n_countries - 1);
  rng.shuffle(country);
  std::vector<Vertex> vs;
  for (int i = 0; i < n_vertices; ++i) vs.push_back(Vertex{i, country[i], 1, {}, {}, {}});
  std::vector<Edge> es;
  for (int a = 0; a < n_vertices; ++a) {
    for (int b = a + 1; b < n_vertices; ++b) {
      if (rng.uniform() < p) es.emplace_back(a, b);
    }
  }
  return CompatibilityGraph(n_countries, std::move(vs), std::move(es));
}

std::vector<double> random_target(SplitMix64& rng, const CompatibilityGraph& g) {
  std::vector<double> x(g.n_countries());
  for (int p = 0; p < g.n_countries(); ++p) {
    const int size = g.country_sizes()[p];
    switch (draw(rng, 0, 2)) {
      case 0: x[p] = -1.0 + rng.uniform() * (size + 2.0); break;
      case 1: x[p] = 0.5 * draw(rng, 0, 2 * size + 2) - 0.5; break;
      default: x[p] = draw(rng, 0, size); break;
    }
  }
  return x;
}

std::vector<double> random_imputation(SplitMix64& rng, const CharacteristicFunction& v,
                                      const std::vector<double>& near) {
  const int n = v.n();
  double singles = 0.0;
  for (int p = 0; p < n; ++p) singles += v[Coalition{1} << p];
  const double surplus = v.value_of_grand() - singles;
  std::vector<double> w(n, 0.0);
  switch (draw(rng, 0, 2)) {
    case 0:
      for (double& x : w) x = -std::log(1.0 - rng.uniform());
      break;
    case 1:
      w[draw(rng, 0, n - 1)] = 1.0;
      break;
    default: {
      std::vector<double> y = near;
      const int p = draw(rng, 0, n - 1);
      const int q = draw(rng, 0, n - 1);
      const double delta = std::clamp(-0.05 + 0.1 * rng.uniform(), v[Coalition{1} << q] - y[q],
                                      y[p] - v[Coalition{1} << p]);
      y[p] -= delta;
      y[q] += delta;
      return y;
    }
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<double> y(n);
  for (int p = 0; p < n; ++p) y[p] = v[Coalition{1} << p] + surplus * w[p] / total;
  return y;
}

SuiteResult selections(std::uint64_t seed, int trials, int max_vertices) {
  SuiteResult r{"lexmin and d1 selections vs enumeration", 0, 0, {}};
  SplitMix64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int nv = draw(rng, 2, max_vertices);
    const int n = draw(rng, 1, std::min(6, nv));
    const CompatibilityGraph g = random_partitioned_graph(rng, nv, n, 0.1 + 0.5 * rng.uniform());
    const std::vector<double> x = random_target(rng, g);
    std::vector<double> best;
    double best_d1 = 1e300;
    for (const MatchedCounts& s : oracle::maximum_matching_profiles(g)) {
      const DeviationVector d = deviation_vector(x, s);
      if (best.empty() || lex_compare(d.sorted, best) < 0) best = d.sorted;
      best_d1 = std::min(best_d1, d.max());
    }
    const int mu = oracle::maximum_matching_size(g);
    ++r.cases;
    const BalancedMatching d1 = min_d1_matching(g, x);
    if (static_cast<int>(d1.matching.size()) != mu || std::abs(d1.d1 - best_d1) > 1e-9) {
      fail(r, t, "d1 " + std::to_string(d1.d1) + " vs " + std::to_string(best_d1));
      continue;
    }
    for (LexminMethod m : {LexminMethod::kGreedy, LexminMethod::kLevels}) {
      const BalancedMatching lm = lexmin_matching(g, x, m);
      const DeviationVector check = deviation_vector(x, matched_counts(g, lm.matching));
      if (static_cast<int>(lm.matching.size()) != mu || lex_compare(check.sorted, best) != 0) {
        fail(r, t, "lexmin " + show(check.sorted) + " vs " + show(best));
        break;
      }
    }
  }
  return r;
}

SuiteResult intervals(std::uint64_t seed, int trials, int max_vertices) {
  SuiteResult r{"interval feasibility vs brute force", 0, 0, {}};
  SplitMix64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int nv = draw(rng, 1, max_vertices);
    const int n = draw(rng, 1, std::min(5, nv));
    const CompatibilityGraph g = random_partitioned_graph(rng, nv, n, 0.1 + 0.5 * rng.uniform());
    IntervalMatcher absorber(g, IntervalMethod::kAbsorber);
    IntervalMatcher weighted(g, IntervalMethod::kWeighted);
    for (int q = 0; q < 8; ++q) {
      std::vector<int> lo(n);
      std::vector<int> hi(n);
      for (int p = 0; p < n; ++p) {
        const int size = g.country_sizes()[p];
        lo[p] = draw(rng, 0, size);
        hi[p] = draw(rng, lo[p], size);
      }
      const bool want = oracle::interval_feasible(g, lo, hi);
      ++r.cases;
      for (IntervalMatcher* m : {&absorber, &weighted}) {
        const auto got = m->solve(lo, hi);
        bool ok = got.has_value() == want;
        if (ok && got) {
          const MatchedCounts s = matched_counts_from_mates(g, *got);
          const int size = std::accumulate(s.begin(), s.end(), 0) / 2;
          ok = size == m->mu();
          for (int p = 0; p < n; ++p) ok = ok && s[p] >= lo[p] && s[p] <= hi[p];
        }
        if (!ok) {
          fail(r, t, std::string(m == &absorber ? "absorber" : "weighted") + " verdict differs");
          break;
        }
      }
    }
  }
  return r;
}

SuiteResult nucleolus(std::uint64_t seed, int games, int samples, int max_n) {
  SuiteResult r{"nucleolus validity", 0, 0, {}};
  SplitMix64 rng(seed);
  for (int t = 0; t < games; ++t) {
    const int n = draw(rng, 2, max_n);
    const int nv = n + 2 + draw(rng, 0, 2 * n + 2);
    const CharacteristicFunction v = generate_game(random_partitioned_graph(rng, nv, n, 0.25));
    const std::vector<double> x = ikep::nucleolus(v).values;
    ++r.cases;
    const double sum = std::accumulate(x.begin(), x.end(), 0.0);
    bool imputation = std::abs(sum - v.value_of_grand()) <= 1e-7;
    for (int p = 0; p < n; ++p) imputation = imputation && x[p] >= v[Coalition{1} << p] - 1e-7;
    if (!imputation) {
      fail(r, t, "not an imputation: " + show(x));
      continue;
    }
    if (core_nonempty(v) && min_excess(v, x) < -1e-7) {
      fail(r, t, "outside the nonempty core: " + show(x));
      continue;
    }
    const std::vector<double> ex = oracle::excesses(v, x);
    for (int s = 0; s < samples; ++s) {
      const std::vector<double> y = random_imputation(rng, v, x);
      if (!oracle::lex_at_least(ex, oracle::excesses(v, y))) {
        fail(r, t, "dominated by " + show(y));
        break;
      }
    }
  }
  return r;
}

SuiteResult concepts(std::uint64_t seed, int games, int max_n) {
  SuiteResult r{"game generation and shapley vs definitions", 0, 0, {}};
  SplitMix64 rng(seed);
  for (int t = 0; t < games; ++t) {
    const int n = draw(rng, 1, max_n);
    const int nv = draw(rng, n, 12);
    const CompatibilityGraph g = random_partitioned_graph(rng, nv, n, 0.1 + 0.5 * rng.uniform());
    const CharacteristicFunction v = generate_game(g);
    ++r.cases;
    if (!(v == oracle::brute_force_game(g))) {
      fail(r, t, "generated game differs from exhaustive search");
      continue;
    }
    const std::vector<double> a = shapley(v).values;
    const std::vector<double> b = oracle::shapley_by_permutations(v);
    for (int p = 0; p < n; ++p) {
      if (std::abs(b[p] - a[p]) > 1e-9) {
        fail(r, t, "shapley " + show(a) + " vs " + show(b));
        break;
      }
    }
  }
  return r;
}

}  // namespace ikep::verify
