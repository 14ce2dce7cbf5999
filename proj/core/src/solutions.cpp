#include "ikep/solutions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "ikep/error.hpp"
#include "ikep/lp.hpp"

namespace ikep {

Allocation Allocation::scaled(double factor) const {
  Allocation out{values, total * factor};
  for (double& x : out.values) x *= factor;
  return out;
}

void Allocation::check_efficiency(double tol) const {
  double s = 0.0;
  for (double x : values) s += x;
  if (std::abs(s - total) > tol * std::max(1.0, std::abs(total))) {
    throw ValidationError("allocation sums to " + std::to_string(s) + " instead of " + std::to_string(total));
  }
}

std::string_view to_string(Concept c) {
  switch (c) {
    case Concept::kShapley: return "shapley";
    case Concept::kNucleolus: return "nucleolus";
    case Concept::kBanzhaf: return "banzhaf";
    case Concept::kTau: return "tau";
    case Concept::kBenefit: return "benefit";
    case Concept::kContribution: return "contribution";
  }
  return "?";
}

std::optional<Concept> parse_concept(std::string_view s) {
  for (Concept c : kAllConcepts) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

Allocation shapley(const CharacteristicFunction& v) {
  const int n = v.n();
  // weight[k] = k! (n-k-1)! / n!
  std::vector<double> weight(std::max(n, 1));
  for (int k = 0; k < n; ++k) {
    double w = 1.0 / n;
    // k!(n-k-1)!/n! = 1 / (n * C(n-1, k))
    double binom = 1.0;
    for (int i = 1; i <= k; ++i) binom = binom * (n - 1 - k + i) / i;
    weight[k] = w / binom;
  }
  std::vector<double> phi(n, 0.0);
  for (Coalition s = 0; s <= v.grand(); ++s) {
    const int k = std::popcount(s);
    if (k == n) continue;
    for (int p = 0; p < n; ++p) {
      if (!contains(s, p)) phi[p] += weight[k] * (v[s | (Coalition{1} << p)] - v[s]);
    }
  }
  return {phi, v.value_of_grand()};
}

BanzhafResult banzhaf(const CharacteristicFunction& v) {
  const int n = v.n();
  BanzhafResult out;
  out.unnormalized.assign(n, 0.0);
  if (n == 0) return out;
  const double w = std::ldexp(1.0, -(n - 1));
  for (Coalition s = 0; s <= v.grand(); ++s) {
    for (int p = 0; p < n; ++p) {
      if (!contains(s, p)) out.unnormalized[p] += w * (v[s | (Coalition{1} << p)] - v[s]);
    }
  }
  double sum = 0.0;
  for (double x : out.unnormalized) sum += x;
  if (std::abs(sum) > 1e-12) {
    Allocation a{out.unnormalized, v.value_of_grand()};
    for (double& x : a.values) x = x / sum * v.value_of_grand();
    out.normalized = a;
  }
  return out;
}

TauResult tau(const CharacteristicFunction& v, double tol) {
  TauResult out;
  out.profile = quasibalance_profile(v, tol);
  if (!out.profile.quasibalanced) return out;
  const auto& a = out.profile.a;
  const auto& b = out.profile.b;
  const int n = v.n();
  double sum_a = 0.0;
  double sum_b = 0.0;
  bool equal = true;
  for (int p = 0; p < n; ++p) {
    sum_a += a[p];
    sum_b += b[p];
    equal = equal && std::abs(a[p] - b[p]) <= tol;
  }
  if (equal) {
    out.gamma = 1.0;
    out.value = Allocation{a, v.value_of_grand()};
    return out;
  }
  out.gamma = std::clamp((sum_b - v.value_of_grand()) / (sum_b - sum_a), 0.0, 1.0);
  Allocation x{std::vector<double>(n), v.value_of_grand()};
  for (int p = 0; p < n; ++p) x.values[p] = out.gamma * a[p] + (1.0 - out.gamma) * b[p];
  out.value = x;
  return out;
}

namespace {

std::optional<Allocation> surplus_split(const CharacteristicFunction& v, const std::vector<double>& weights,
                                        double tol) {
  double sum = 0.0;
  for (double w : weights) sum += w;
  const double surp = surplus(v);
  Allocation x{std::vector<double>(v.n()), v.value_of_grand()};
  if (std::abs(surp) <= tol) {
    // Every weighting gives the singleton values.
    for (int p = 0; p < v.n(); ++p) x.values[p] = v[Coalition{1} << p];
    return x;
  }
  if (std::abs(sum) <= tol) return std::nullopt;
  for (int p = 0; p < v.n(); ++p) x.values[p] = v[Coalition{1} << p] + weights[p] / sum * surp;
  return x;
}

std::vector<double> marginals_to_grand(const CharacteristicFunction& v) {
  std::vector<double> m(v.n());
  for (int p = 0; p < v.n(); ++p) m[p] = v.value_of_grand() - v[v.grand() & ~(Coalition{1} << p)];
  return m;
}

}  // namespace

std::optional<Allocation> benefit(const CharacteristicFunction& v, double tol) {
  std::vector<double> w = marginals_to_grand(v);
  for (int p = 0; p < v.n(); ++p) w[p] -= v[Coalition{1} << p];
  return surplus_split(v, w, tol);
}

std::optional<Allocation> contribution(const CharacteristicFunction& v, double tol) {
  return surplus_split(v, marginals_to_grand(v), tol);
}

std::optional<Allocation> evaluate_concept(Concept c, const CharacteristicFunction& v) {
  switch (c) {
    case Concept::kShapley: return shapley(v);
    case Concept::kNucleolus: return nucleolus(v);
    case Concept::kBanzhaf: return banzhaf(v).normalized;
    case Concept::kTau: return tau(v).value;
    case Concept::kBenefit: return benefit(v);
    case Concept::kContribution: return contribution(v);
  }
  return std::nullopt;
}

double min_excess(const CharacteristicFunction& v, std::span<const double> x) {
  double best = std::numeric_limits<double>::infinity();
  for (Coalition s = 1; s < v.grand(); ++s) best = std::min(best, coalition_sum(x, s) - v[s]);
  return best;
}

double least_core_value(const CharacteristicFunction& v) {
  const int n = v.n();
  if (n < 2) return std::numeric_limits<double>::infinity();
  LinearProgram lp(n + 1);
  lp.objective[n] = 1.0;
  for (Coalition s = 1; s < v.grand(); ++s) {
    std::vector<double> row(n + 1, 0.0);
    for (int p = 0; p < n; ++p) row[p] = contains(s, p) ? 1.0 : 0.0;
    row[n] = -1.0;
    lp.add_row(std::move(row), Sense::kGe, v[s]);
  }
  std::vector<double> eff(n + 1, 1.0);
  eff[n] = 0.0;
  lp.add_row(std::move(eff), Sense::kEq, v.value_of_grand());
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) throw DegeneracyError("least-core LP did not reach an optimum");
  return sol.value;
}

bool core_nonempty(const CharacteristicFunction& v, double tol) { return least_core_value(v) >= -tol; }

std::vector<double> excess_vector(const CharacteristicFunction& v, std::span<const double> x) {
  if (v.n() < 2) throw ValidationError("excess vector needs at least two players");
  std::vector<double> e;
  e.reserve(v.grand() - 1);
  for (Coalition s = 1; s < v.grand(); ++s) e.push_back(coalition_sum(x, s) - v[s]);
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace ikep
