#pragma once

#include <limits>
#include <vector>

#include "oracleopt/oracle.hpp"

namespace oracleopt {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// maximize <objective, x> subject to rows (<=), equalities (==) and
/// per-variable bounds lower <= x <= upper. Lower bounds may be -inf;
/// upper bounds may be +inf.
struct LinearProgram {
  Vec objective;
  std::vector<Constraint> rows;
  std::vector<Constraint> equalities;
  Vec lower;
  Vec upper;

  /// Variables in [0, +inf) with no rows yet.
  static LinearProgram nonnegative(Vec objective);
  Eigen::Index num_vars() const { return objective.size(); }
};

struct LpSolution {
  Vec x;
  double value = 0.0;
  /// Basic columns at the optimum, as original variable indices; slack,
  /// surplus and split columns are reported as -1.
  std::vector<int> basis;
  int pivots = 0;
};

/// Dense two-phase primal simplex. Pivoting follows the most positive
/// reduced cost and falls back to Bland's rule while pivots are degenerate.
/// Throws LpInfeasible / LpUnbounded.
LpSolution solve_lp(const LinearProgram& lp);

/// Optimal value of `base` with the separated rows appended.
double lp_stop_bound(const LinearProgram& base, const std::vector<Constraint>& separated);

}  // namespace oracleopt
