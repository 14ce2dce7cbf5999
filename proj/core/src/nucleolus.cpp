#include "ikep/detail/nucleolus_impl.hpp"
#include "ikep/solutions.hpp"

namespace ikep {

Allocation nucleolus(const CharacteristicFunction& v) {
  const detail::NucleolusTolerances<double> tol{1e-9, 1e-9, 1e-7};
  std::vector<double> x = detail::nucleolus_generic<double>(
      v, v.values(), tol, [](const LinearProgram& lp) { return solve_lp(lp); });
  return {std::move(x), v.value_of_grand()};
}

}  // namespace ikep
