#pragma once

#include <vector>

#include "hembed/rational.hpp"

namespace hembed {

struct LpResult {
  enum Status { Optimal, Infeasible, Unbounded } status = Infeasible;
  std::vector<Rat> x;
  Rat value;  // objective at x when Optimal
};

// minimize objective . x  subject to  lhs x >= rhs, x >= 0.
// Dense two-phase simplex over exact rationals; Bland's rule on both pivot
// choices, so it terminates without any epsilon tuning. Intended for the
// small systems built here (tens of rows and columns).
LpResult solve_lp_min(const std::vector<std::vector<Rat>>& lhs,
                      const std::vector<Rat>& rhs,
                      const std::vector<Rat>& objective);

}  // namespace hembed
