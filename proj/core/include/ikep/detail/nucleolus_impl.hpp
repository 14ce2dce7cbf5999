#pragma once

// Successive-LP nucleolus, generic over the scalar. Each level maximizes the
// smallest free excess, then fixes every coalition whose excess is constant
// on the optimal face: rows with a positive multiplier directly, the other
// tight rows by maximizing their summed excess over the face.

#include <algorithm>
#include <string>
#include <vector>

#include "ikep/error.hpp"
#include "ikep/game.hpp"
#include "ikep/lp.hpp"

namespace ikep::detail {

template <typename T>
struct NucleolusTolerances {
  T dual;   // multipliers above this fix their coalition
  T relax;  // slack granted to free rows in face LPs
  T level;  // excess within this of the level counts as equal
};

/// Incremental row-echelon basis used to detect coalitions whose value is
/// already determined by the fixed ones.
template <typename T>
class SpanBasis {
 public:
  SpanBasis(int n, T tol) : n_(n), tol_(tol) {}

  int rank() const { return static_cast<int>(rows_.size()); }

  bool contains(Coalition s) const { return reduce(indicator(s)).empty(); }

  bool add(Coalition s) {
    std::vector<T> r = indicator(s);
    std::vector<T> left = reduce(r);
    if (left.empty()) return false;
    int lead = 0;
    while (abs_t(left[lead]) <= tol_) ++lead;
    const T d = left[lead];
    for (T& x : left) x /= d;
    rows_.push_back(std::move(left));
    leads_.push_back(lead);
    return true;
  }

 private:
  static T abs_t(const T& x) { return x < T(0) ? T(-x) : x; }

  std::vector<T> indicator(Coalition s) const {
    std::vector<T> r(n_, T(0));
    for (int p = 0; p < n_; ++p) {
      if (ikep::contains(s, p)) r[p] = T(1);
    }
    return r;
  }

  // Returns the residual, or an empty vector if it vanishes.
  std::vector<T> reduce(std::vector<T> r) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const T f = r[leads_[k]];
      if (f == T(0)) continue;
      for (int p = 0; p < n_; ++p) r[p] -= f * rows_[k][p];
    }
    for (const T& x : r) {
      if (abs_t(x) > tol_) return r;
    }
    return {};
  }

  int n_;
  T tol_;
  std::vector<std::vector<T>> rows_;
  std::vector<int> leads_;
};

template <typename T, typename Solve>
std::vector<T> nucleolus_generic(const CharacteristicFunction& game, const std::vector<T>& v,
                                 const NucleolusTolerances<T>& tol, Solve&& solve) {
  const int n = game.n();
  const Coalition grand = game.grand();
  if (n == 0) return {};
  if (n == 1) return {v[grand]};
  T singles(0);
  for (int p = 0; p < n; ++p) singles += v[Coalition{1} << p];
  if (singles > v[grand] + tol.level) {
    throw ValidationError("the imputation set is empty: singleton values sum above v(N)");
  }

  auto coeffs = [n](Coalition s, int width) {
    std::vector<T> r(width, T(0));
    for (int p = 0; p < n; ++p) {
      if (contains(s, p)) r[p] = T(1);
    }
    return r;
  };

  std::vector<Coalition> free;
  for (Coalition s = 1; s < grand; ++s) free.push_back(s);
  std::vector<std::pair<Coalition, T>> fixed;  // coalition and its excess
  SpanBasis<T> span(n, tol.level * T(1e-2));
  span.add(grand);

  auto add_common_rows = [&](LinearProgramT<T>& lp, int width) {
    for (const auto& [s, e] : fixed) lp.add_row(coeffs(s, width), Sense::kEq, T(v[s] + e));
    lp.add_row(coeffs(grand, width), Sense::kEq, v[grand]);
    for (int p = 0; p < n; ++p) lp.lower[p] = v[Coalition{1} << p];
  };

  std::vector<T> point;
  while (span.rank() < n) {
    LinearProgramT<T> lp(n + 1);
    lp.objective[n] = T(1);
    for (Coalition s : free) {
      std::vector<T> r = coeffs(s, n + 1);
      r[n] = T(-1);
      lp.add_row(std::move(r), Sense::kGe, v[s]);
    }
    add_common_rows(lp, n + 1);
    const LpSolutionT<T> level = solve(lp);
    if (level.status != LpStatus::kOptimal) {
      throw DegeneracyError("nucleolus level LP ended " + to_string(level.status));
    }
    const T eps = level.point[n];
    point.assign(level.point.begin(), level.point.begin() + n);

    const int m = static_cast<int>(free.size());
    std::vector<T> excess(m);
    // 1 = fix, 0 = undecided, -1 = stays free
    std::vector<int> state(m, -1);
    std::size_t best = 0;
    for (int i = 0; i < m; ++i) {
      T x(0);
      for (int p = 0; p < n; ++p) {
        if (contains(free[i], p)) x += point[p];
      }
      excess[i] = x - v[free[i]];
      if (level.duals[i] > tol.dual) {
        state[i] = 1;
      } else if (excess[i] <= eps + tol.level) {
        state[i] = 0;
      }
      if (level.duals[i] > level.duals[best]) best = i;
    }
    if (std::none_of(state.begin(), state.end(), [](int x) { return x == 1; })) state[best] = 1;

    // Maximize the summed excess of the undecided rows over the optimal face.
    // Rows lifted above the level leave; once none moves, each undecided row
    // is at its lower bound at a maximizer of the sum, hence constant.
    for (;;) {
      std::vector<int> undecided;
      for (int i = 0; i < m; ++i) {
        if (state[i] == 0) undecided.push_back(i);
      }
      if (undecided.empty()) break;
      LinearProgramT<T> face(n);
      for (int i : undecided) {
        for (int p = 0; p < n; ++p) {
          if (contains(free[i], p)) face.objective[p] += T(1);
        }
      }
      for (int j = 0; j < m; ++j) {
        if (state[j] == 1) {
          face.add_row(coeffs(free[j], n), Sense::kEq, T(v[free[j]] + eps));
        } else {
          face.add_row(coeffs(free[j], n), Sense::kGe, T(v[free[j]] + eps - tol.relax));
        }
      }
      add_common_rows(face, n);
      const LpSolutionT<T> top = solve(face);
      if (top.status != LpStatus::kOptimal) {
        throw DegeneracyError("nucleolus face LP ended " + to_string(top.status));
      }
      bool moved = false;
      for (int i : undecided) {
        T x(0);
        for (int p = 0; p < n; ++p) {
          if (contains(free[i], p)) x += top.point[p];
        }
        if (x - v[free[i]] > eps + tol.level) {
          state[i] = -1;
          moved = true;
        }
      }
      if (!moved) {
        for (int i : undecided) state[i] = 1;
        break;
      }
    }

    std::vector<Coalition> still_free;
    for (int i = 0; i < m; ++i) {
      if (state[i] == 1) {
        fixed.emplace_back(free[i], eps);
        span.add(free[i]);
      }
    }
    for (int i = 0; i < m; ++i) {
      if (state[i] != 1 && !span.contains(free[i])) still_free.push_back(free[i]);
    }
    free = std::move(still_free);
  }
  return point;
}

}  // namespace ikep::detail
