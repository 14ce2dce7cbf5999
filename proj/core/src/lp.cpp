#include "ikep/lp.hpp"

#include "ikep/detail/simplex.hpp"

namespace ikep {

namespace detail {

template <>
struct ScalarTraits<double> {
  static constexpr bool kExact = false;
  static double pivot_tol(const LpOptions& o) { return o.pivot_tol; }
  static double feas_tol(const LpOptions& o) { return o.feas_tol; }
};

}  // namespace detail

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options) {
  return detail::solve_lp_generic(lp, options);
}

}  // namespace ikep
