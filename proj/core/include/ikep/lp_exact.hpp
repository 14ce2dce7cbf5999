#pragma once

// Exact rational LP solving with GMP. Only consumers that link gmpxx should
// include this header.

#include <gmpxx.h>

#include "ikep/detail/simplex.hpp"
#include "ikep/lp.hpp"

namespace ikep {

namespace detail {

template <>
struct ScalarTraits<mpq_class> {
  static constexpr bool kExact = true;
  static mpq_class pivot_tol(const LpOptions&) { return 0; }
  static mpq_class feas_tol(const LpOptions&) { return 0; }
};

}  // namespace detail

using ExactLinearProgram = LinearProgramT<mpq_class>;
using ExactLpSolution = LpSolutionT<mpq_class>;

inline ExactLpSolution solve_lp_exact(const ExactLinearProgram& lp, const LpOptions& options = {}) {
  return detail::solve_lp_generic(lp, options);
}

}  // namespace ikep
