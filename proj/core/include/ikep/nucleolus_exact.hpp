#pragma once

// Exact rational nucleolus for certifying floating results on small games.
// Only consumers that link gmpxx should include this header.

#include <gmpxx.h>

#include "ikep/detail/nucleolus_impl.hpp"
#include "ikep/lp_exact.hpp"

namespace ikep {

/// The nucleolus with every LP solved over the rationals. Game values are
/// converted exactly from their double representation.
inline std::vector<mpq_class> nucleolus_exact(const CharacteristicFunction& game) {
  std::vector<mpq_class> v(game.values().begin(), game.values().end());
  const detail::NucleolusTolerances<mpq_class> tol{0, 0, 0};
  return detail::nucleolus_generic<mpq_class>(
      game, v, tol, [](const ExactLinearProgram& lp) { return solve_lp_exact(lp); });
}

}  // namespace ikep
