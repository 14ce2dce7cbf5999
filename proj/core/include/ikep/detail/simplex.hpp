#pragma once

// Scalar-generic revised simplex. Instantiated for double in lp.cpp and for
// mpq_class in lp_exact.hpp.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ikep/error.hpp"
#include "ikep/lp.hpp"

namespace ikep::detail {

template <typename T>
struct ScalarTraits;

template <typename T>
T abs_of(const T& x) {
  return x < T(0) ? T(-x) : x;
}

enum class StdStatus { kOptimal, kInfeasible, kUnbounded };

/// min cost.y s.t. sum_j y_j col_j = rhs, y >= 0. Columns are dense of length m.
template <typename T>
class StandardSimplex {
 public:
  StandardSimplex(int m, const std::vector<std::vector<T>>& cols, std::vector<T> rhs, std::vector<T> cost,
                  const LpOptions& opt)
      : m_(m), cols_(cols), rhs_(std::move(rhs)), cost_(std::move(cost)), opt_(opt) {
    pivot_tol_ = ScalarTraits<T>::pivot_tol(opt);
    feas_tol_ = ScalarTraits<T>::feas_tol(opt);
    n_ = static_cast<int>(cols_.size());
    max_iter_ = opt.max_iterations > 0 ? opt.max_iterations : 100L * (n_ + m_) + 1000;
  }

  StdStatus solve() {
    // Phase 1 with one artificial per row, signed so the start is feasible.
    art_sign_.assign(m_, T(1));
    basis_.resize(m_);
    xb_.resize(m_);
    binv_.assign(m_, std::vector<T>(m_, T(0)));
    for (int i = 0; i < m_; ++i) {
      if (rhs_[i] < T(0)) art_sign_[i] = T(-1);
      basis_[i] = n_ + i;
      xb_[i] = abs_of(rhs_[i]);
      binv_[i][i] = art_sign_[i];
    }
    std::vector<T> phase1(n_ + m_, T(0));
    for (int i = 0; i < m_; ++i) phase1[n_ + i] = T(1);
    if (iterate(phase1) == StdStatus::kUnbounded) throw DegeneracyError("phase 1 reported unbounded");
    T infeas(0);
    T scale(1);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) infeas += xb_[i];
      scale = std::max(scale, abs_of(rhs_[i]));
    }
    if (infeas > feas_tol_ * scale) return StdStatus::kInfeasible;
    drive_out_artificials();
    std::vector<T> phase2(n_ + m_, T(0));
    std::copy(cost_.begin(), cost_.end(), phase2.begin());
    return iterate(phase2);
  }

  /// Simplex multipliers pi with pi.B = c_B for the final basis.
  std::vector<T> multipliers() const { return multipliers_for(full_cost()); }

  /// Value of every structural column (zero when non-basic).
  std::vector<T> primal() const {
    std::vector<T> y(n_, T(0));
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) y[basis_[i]] = xb_[i];
    }
    return y;
  }

  long iterations() const { return iterations_; }

 private:
  std::vector<T> full_cost() const {
    std::vector<T> c(n_ + m_, T(0));
    std::copy(cost_.begin(), cost_.end(), c.begin());
    return c;
  }

  const T& coef(int j, int i) const { return cols_[j][i]; }

  std::vector<T> column(int j) const {
    if (j < n_) return cols_[j];
    std::vector<T> e(m_, T(0));
    e[j - n_] = art_sign_[j - n_];
    return e;
  }

  std::vector<T> multipliers_for(const std::vector<T>& c) const {
    std::vector<T> pi(m_, T(0));
    for (int k = 0; k < m_; ++k) {
      const T& ck = c[basis_[k]];
      if (ck == T(0)) continue;
      for (int i = 0; i < m_; ++i) pi[i] += ck * binv_[k][i];
    }
    return pi;
  }

  void pivot(int r, int q, const std::vector<T>& u) {
    const T ur = u[r];
    for (int i = 0; i < m_; ++i) binv_[r][i] /= ur;
    for (int k = 0; k < m_; ++k) {
      if (k == r || u[k] == T(0)) continue;
      const T f = u[k];
      for (int i = 0; i < m_; ++i) binv_[k][i] -= f * binv_[r][i];
    }
    const T theta = xb_[r] / ur;
    for (int k = 0; k < m_; ++k) {
      if (k != r) xb_[k] -= theta * u[k];
    }
    xb_[r] = theta;
    basis_[r] = q;
  }

  void refactor() {
    // Gauss-Jordan on the basis matrix with partial pivoting.
    std::vector<std::vector<T>> a(m_, std::vector<T>(2 * m_, T(0)));
    for (int k = 0; k < m_; ++k) {
      const std::vector<T> col = column(basis_[k]);
      for (int i = 0; i < m_; ++i) a[i][k] = col[i];
      a[k][m_ + k] = T(1);
    }
    for (int c = 0; c < m_; ++c) {
      int best = c;
      for (int r = c + 1; r < m_; ++r) {
        if (abs_of(a[r][c]) > abs_of(a[best][c])) best = r;
      }
      if (abs_of(a[best][c]) <= pivot_tol_) throw DegeneracyError("singular simplex basis");
      std::swap(a[best], a[c]);
      const T d = a[c][c];
      for (T& x : a[c]) x /= d;
      for (int r = 0; r < m_; ++r) {
        if (r == c || a[r][c] == T(0)) continue;
        const T f = a[r][c];
        for (int k = 0; k < 2 * m_; ++k) a[r][k] -= f * a[c][k];
      }
    }
    for (int k = 0; k < m_; ++k) {
      for (int i = 0; i < m_; ++i) binv_[k][i] = a[k][m_ + i];
    }
    for (int k = 0; k < m_; ++k) {
      T s(0);
      for (int i = 0; i < m_; ++i) s += binv_[k][i] * rhs_[i];
      xb_[k] = s;
    }
  }

  std::vector<T> ftran(int q) const {
    std::vector<T> u(m_, T(0));
    if (q >= n_) {
      const int i = q - n_;
      for (int k = 0; k < m_; ++k) u[k] = binv_[k][i] * art_sign_[i];
      return u;
    }
    const std::vector<T>& col = cols_[q];
    for (int i = 0; i < m_; ++i) {
      if (col[i] == T(0)) continue;
      for (int k = 0; k < m_; ++k) u[k] += binv_[k][i] * col[i];
    }
    return u;
  }

  StdStatus iterate(const std::vector<T>& c) {
    std::vector<char> is_basic(n_ + m_, 0);
    for (int b : basis_) is_basic[b] = 1;
    int degenerate_run = 0;
    bool bland = false;
    long since_refactor = 0;
    for (;;) {
      if (++iterations_ > max_iter_) throw DegeneracyError("simplex iteration cap reached");
      if (!ScalarTraits<T>::kExact && since_refactor >= 64) {
        refactor();
        since_refactor = 0;
      }
      const std::vector<T> pi = multipliers_for(c);
      int q = -1;
      T best(0);
      for (int j = 0; j < n_; ++j) {
        if (is_basic[j]) continue;
        T d = c[j];
        const std::vector<T>& col = cols_[j];
        for (int i = 0; i < m_; ++i) d -= pi[i] * col[i];
        if (d < -pivot_tol_) {
          if (bland) {
            q = j;
            break;
          }
          if (q < 0 || d < best) {
            q = j;
            best = d;
          }
        }
      }
      if (q < 0) return StdStatus::kOptimal;
      const std::vector<T> u = ftran(q);
      int r = -1;
      T ratio(0);
      for (int k = 0; k < m_; ++k) {
        if (u[k] <= pivot_tol_) continue;
        const T t = std::max(xb_[k], T(0)) / u[k];
        if (r < 0 || t < ratio) {
          r = k;
          ratio = t;
        } else if (t == ratio) {
          if (bland ? basis_[k] < basis_[r] : u[k] > u[r]) r = k;
        }
      }
      if (r < 0) return StdStatus::kUnbounded;
      if (ratio <= feas_tol_) {
        if (++degenerate_run >= opt_.degenerate_switch) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      is_basic[basis_[r]] = 0;
      is_basic[q] = 1;
      pivot(r, q, u);
      ++since_refactor;
    }
  }

  void drive_out_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      std::vector<char> is_basic(n_, 0);
      for (int b : basis_) {
        if (b < n_) is_basic[b] = 1;
      }
      int q = -1;
      T best(0);
      for (int j = 0; j < n_; ++j) {
        if (is_basic[j]) continue;
        T e(0);
        for (int i = 0; i < m_; ++i) e += binv_[r][i] * cols_[j][i];
        if (abs_of(e) > pivot_tol_ && abs_of(e) > best) {
          best = abs_of(e);
          q = j;
          if (ScalarTraits<T>::kExact) break;
        }
      }
      if (q < 0) continue;  // redundant row; the artificial stays at zero
      pivot(r, q, ftran(q));
    }
    if (!ScalarTraits<T>::kExact) refactor();
  }

  int m_;
  int n_ = 0;
  const std::vector<std::vector<T>>& cols_;
  std::vector<T> rhs_;
  std::vector<T> cost_;
  LpOptions opt_;
  T pivot_tol_{};
  T feas_tol_{};
  long max_iter_ = 0;
  long iterations_ = 0;
  std::vector<T> art_sign_;
  std::vector<int> basis_;
  std::vector<T> xb_;
  std::vector<std::vector<T>> binv_;
};

/// Solves a general LP through its dual in standard form.
template <typename T>
LpSolutionT<T> solve_lp_generic(const LinearProgramT<T>& lp, const LpOptions& opt) {
  const int n = lp.n_vars();
  for (const auto& row : lp.rows) {
    if (static_cast<int>(row.coeffs.size()) != n) {
      throw ValidationError("LP row has " + std::to_string(row.coeffs.size()) + " coefficients for " +
                            std::to_string(n) + " variables");
    }
  }
  if (static_cast<int>(lp.lower.size()) != n || static_cast<int>(lp.upper.size()) != n) {
    throw ValidationError("LP bound vectors do not match the variable count");
  }
  const T sign = lp.direction == Direction::kMaximize ? T(1) : T(-1);

  // Primal as max c'.x s.t. a.x <= b and a.x = b. Each dual column stores a;
  // equality rows contribute a and -a.
  std::vector<std::vector<T>> cols;
  std::vector<T> cost;
  struct Origin {
    int row;  // index into lp.rows, or -1 for a bound
    T factor;
  };
  std::vector<Origin> origin;
  for (int i = 0; i < static_cast<int>(lp.rows.size()); ++i) {
    const auto& row = lp.rows[i];
    if (row.sense == Sense::kGe) {
      std::vector<T> a(n);
      for (int j = 0; j < n; ++j) a[j] = -row.coeffs[j];
      cols.push_back(std::move(a));
      cost.push_back(-row.rhs);
      origin.push_back({i, T(1)});
    } else {
      cols.push_back(row.coeffs);
      cost.push_back(row.rhs);
      origin.push_back({i, T(1)});
      if (row.sense == Sense::kEq) {
        std::vector<T> a(n);
        for (int j = 0; j < n; ++j) a[j] = -row.coeffs[j];
        cols.push_back(std::move(a));
        cost.push_back(-row.rhs);
        origin.push_back({i, T(-1)});
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    if (lp.lower[j]) {
      std::vector<T> a(n, T(0));
      a[j] = T(-1);
      cols.push_back(std::move(a));
      cost.push_back(-*lp.lower[j]);
      origin.push_back({-1, T(1)});
    }
    if (lp.upper[j]) {
      std::vector<T> a(n, T(0));
      a[j] = T(1);
      cols.push_back(std::move(a));
      cost.push_back(*lp.upper[j]);
      origin.push_back({-1, T(1)});
    }
  }
  std::vector<T> c(n);
  for (int j = 0; j < n; ++j) c[j] = sign * lp.objective[j];

  LpSolutionT<T> out;
  StandardSimplex<T> dual(n, cols, c, cost, opt);
  const StdStatus st = dual.solve();
  if (st == StdStatus::kUnbounded) {
    out.status = LpStatus::kInfeasible;
    return out;
  }
  if (st == StdStatus::kInfeasible) {
    // Dual infeasible: the primal is infeasible or unbounded. The zero
    // objective separates the two.
    StandardSimplex<T> probe(n, cols, std::vector<T>(n, T(0)), cost, opt);
    out.status = probe.solve() == StdStatus::kUnbounded ? LpStatus::kInfeasible : LpStatus::kUnbounded;
    return out;
  }
  out.status = LpStatus::kOptimal;
  out.point = dual.multipliers();
  out.value = T(0);
  for (int j = 0; j < n; ++j) out.value += lp.objective[j] * out.point[j];
  const std::vector<T> y = dual.primal();
  out.duals.assign(lp.rows.size(), T(0));
  for (std::size_t k = 0; k < origin.size(); ++k) {
    if (origin[k].row >= 0) out.duals[origin[k].row] += origin[k].factor * y[k];
  }
  const T tol = ScalarTraits<T>::feas_tol(opt);
  for (int i = 0; i < static_cast<int>(lp.rows.size()); ++i) {
    const auto& row = lp.rows[i];
    T lhs(0);
    for (int j = 0; j < n; ++j) lhs += row.coeffs[j] * out.point[j];
    const T scale = std::max(T(1), abs_of(row.rhs));
    const T slack = lhs - row.rhs;
    if (abs_of(slack) <= tol * scale) out.active.push_back(i);
  }
  return out;
}

}  // namespace ikep::detail
