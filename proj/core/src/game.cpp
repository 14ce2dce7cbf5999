#include "ikep/game.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ikep/error.hpp"
#include "ikep/matching.hpp"

namespace ikep {

CharacteristicFunction::CharacteristicFunction(int n) : n_(n) {
  if (n < 0 || n > kHardMaxCountries) {
    throw CapacityError("game with " + std::to_string(n) + " players is outside [0, " +
                        std::to_string(kHardMaxCountries) + "]");
  }
  values_.assign(std::size_t{1} << n, 0.0);
}

CharacteristicFunction::CharacteristicFunction(int n, std::vector<double> values)
    : CharacteristicFunction(n) {
  if (values.size() != values_.size()) {
    throw ValidationError("game on " + std::to_string(n) + " players needs " +
                          std::to_string(values_.size()) + " values, got " +
                          std::to_string(values.size()));
  }
  if (values[0] != 0.0) throw ValidationError("value of the empty coalition must be 0");
  for (double x : values) {
    if (!std::isfinite(x)) throw ValidationError("game values must be finite");
  }
  values_ = std::move(values);
}

namespace {

int count_matched(const std::vector<int>& mate) {
  return static_cast<int>(std::count_if(mate.begin(), mate.end(), [](int m) { return m >= 0; }) / 2);
}

struct GameBuilder {
  const CompatibilityGraph& g;
  BlossomMatcher matcher;
  CharacteristicFunction v;
  std::vector<std::vector<int>> stack;  // one mate array per depth

  void visit(Coalition s, int next_country, int depth) {
    for (int p = next_country; p < g.n_countries(); ++p) {
      const Coalition t = s | (Coalition{1} << p);
      std::vector<int>& mate = stack[depth + 1];
      mate = stack[depth];
      matcher.grow_warm(mate, t);
      v[t] = count_matched(mate);
      visit(t, p + 1, depth + 1);
    }
  }
};

}  // namespace

CharacteristicFunction generate_game(const CompatibilityGraph& g, const GameOptions& options) {
  if (options.max_countries > kHardMaxCountries) {
    throw CapacityError("country cap " + std::to_string(options.max_countries) +
                        " exceeds the hard limit of " + std::to_string(kHardMaxCountries));
  }
  const int n = g.n_countries();
  if (n > options.max_countries) {
    throw CapacityError("refusing to build a game on " + std::to_string(n) +
                        " countries: the coalition table has 2^" + std::to_string(n) +
                        " entries and the cap is " + std::to_string(options.max_countries));
  }
  GameBuilder b{g, BlossomMatcher(g), CharacteristicFunction(n),
                std::vector<std::vector<int>>(n + 1, std::vector<int>(g.size(), -1))};
  b.visit(0, 0, 0);
  return std::move(b.v);
}

bool is_convex(const CharacteristicFunction& v, double tol) {
  const int n = v.n();
  const Coalition full = v.grand();
  for (Coalition s = 0; s <= full; ++s) {
    for (int i = 0; i < n; ++i) {
      if (contains(s, i)) continue;
      const Coalition si = s | (Coalition{1} << i);
      const double gain = v[si] - v[s];
      for (int j = i + 1; j < n; ++j) {
        if (contains(s, j)) continue;
        const Coalition sj = s | (Coalition{1} << j);
        if (gain > v[si | sj] - v[sj] + tol) return false;
      }
    }
  }
  return true;
}

bool is_superadditive(const CharacteristicFunction& v, double tol) {
  const Coalition full = v.grand();
  for (Coalition s = 1; s <= full; ++s) {
    const Coalition rest = full & ~s;
    // Enumerate non-empty T within the complement of S, each unordered pair once.
    for (Coalition t = rest; t != 0; t = (t - 1) & rest) {
      if (t < s) continue;
      if (v[s | t] + tol < v[s] + v[t]) return false;
    }
  }
  return true;
}

double coalition_sum(std::span<const double> x, Coalition s) {
  double total = 0.0;
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (contains(s, static_cast<int>(p))) total += x[p];
  }
  return total;
}

double remainder(const CharacteristicFunction& v, std::span<const double> b, Coalition s, int p) {
  return v[s] - coalition_sum(b, s & ~(Coalition{1} << p));
}

QuasibalanceProfile quasibalance_profile(const CharacteristicFunction& v, double tol) {
  const int n = v.n();
  const Coalition full = v.grand();
  QuasibalanceProfile out;
  out.b.resize(n);
  for (int p = 0; p < n; ++p) out.b[p] = v[full] - v[full & ~(Coalition{1} << p)];
  out.a.assign(n, -std::numeric_limits<double>::infinity());
  for (Coalition s = 1; s <= full; ++s) {
    const double bs = coalition_sum(out.b, s);
    for (int p = 0; p < n; ++p) {
      if (contains(s, p)) out.a[p] = std::max(out.a[p], v[s] - (bs - out.b[p]));
    }
  }
  bool ok = true;
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (int p = 0; p < n; ++p) {
    ok = ok && out.a[p] <= out.b[p] + tol;
    sum_a += out.a[p];
    sum_b += out.b[p];
  }
  out.quasibalanced = ok && sum_a <= v[full] + tol && v[full] <= sum_b + tol;
  return out;
}

bool is_quasibalanced(const CharacteristicFunction& v, double tol) {
  return quasibalance_profile(v, tol).quasibalanced;
}

double surplus(const CharacteristicFunction& v) {
  double s = v.value_of_grand();
  for (int p = 0; p < v.n(); ++p) s -= v[Coalition{1} << p];
  return s;
}

bool is_essential(const CharacteristicFunction& v, double tol) { return surplus(v) > tol; }

CharacteristicFunction add_additive(const CharacteristicFunction& v, std::span<const double> c) {
  if (static_cast<int>(c.size()) != v.n()) {
    throw ValidationError("additive shift has " + std::to_string(c.size()) + " entries for a " +
                          std::to_string(v.n()) + "-player game");
  }
  std::vector<double> values(v.values().size());
  for (Coalition s = 0; s < values.size(); ++s) values[s] = v[s] + coalition_sum(c, s);
  values[0] = 0.0;
  return CharacteristicFunction(v.n(), std::move(values));
}

CharacteristicFunction credit_adjusted_game(const CharacteristicFunction& v, std::span<const double> c) {
  double total = 0.0;
  for (double x : c) total += x;
  if (std::abs(total) > 1e-9) {
    throw ValidationError("credits must sum to zero, got " + std::to_string(total));
  }
  return add_additive(v, c);
}

CharacteristicFunction accumulate_games(std::span<const CharacteristicFunction> games) {
  if (games.empty()) throw ValidationError("cannot accumulate an empty list of games");
  const int n = games.front().n();
  std::vector<double> values(games.front().values().size(), 0.0);
  for (const CharacteristicFunction& v : games) {
    if (v.n() != n) {
      throw ValidationError("cannot accumulate games on " + std::to_string(n) + " and " +
                            std::to_string(v.n()) + " players");
    }
    for (std::size_t s = 0; s < values.size(); ++s) values[s] += v.values()[s];
  }
  return CharacteristicFunction(n, std::move(values));
}

}  // namespace ikep
