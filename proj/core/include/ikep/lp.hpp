#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ikep {

enum class Sense { kLe, kEq, kGe };
enum class Direction { kMaximize, kMinimize };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string to_string(LpStatus s);

/// Dense linear program. Variables are free unless bounds are given.
template <typename T>
struct LinearProgramT {
  struct Row {
    std::vector<T> coeffs;
    Sense sense = Sense::kLe;
    T rhs{};
  };

  Direction direction = Direction::kMaximize;
  std::vector<T> objective;
  std::vector<Row> rows;
  std::vector<std::optional<T>> lower;
  std::vector<std::optional<T>> upper;

  LinearProgramT() = default;
  explicit LinearProgramT(int n_vars, Direction dir = Direction::kMaximize)
      : direction(dir), objective(n_vars), lower(n_vars), upper(n_vars) {}

  int n_vars() const { return static_cast<int>(objective.size()); }
  int add_row(std::vector<T> coeffs, Sense sense, T rhs) {
    rows.push_back({std::move(coeffs), sense, std::move(rhs)});
    return static_cast<int>(rows.size()) - 1;
  }
};

template <typename T>
struct LpSolutionT {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<T> point;
  T value{};
  /// One multiplier per row, non-negative for inequality rows. A row with a
  /// positive multiplier is binding at every optimal point.
  std::vector<T> duals;
  /// Rows whose slack is within the feasibility tolerance at `point`.
  std::vector<int> active;
};

using LinearProgram = LinearProgramT<double>;
using LpSolution = LpSolutionT<double>;

/// Raised when the simplex method cannot make trustworthy progress: a
/// numerically singular basis or the iteration cap.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LpOptions {
  double pivot_tol = 1e-9;
  double feas_tol = 1e-8;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_switch = 50;
  /// 0 selects a cap proportional to the problem size.
  long max_iterations = 0;
};

/// Revised simplex on the dual of max c.x s.t. A x <= b (free x), which has
/// one row per variable and one column per constraint.
LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options = {});

}  // namespace ikep
