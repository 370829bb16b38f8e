#pragma once

#include <optional>
#include <vector>

#include "oracleopt/lp.hpp"
#include "oracleopt/oracle.hpp"
#include "oracleopt/trace.hpp"

namespace oracleopt {

struct CutLoopResult {
  Vec x;                      // optimum of the last relaxation
  double value = 0.0;         // its value, an upper bound on OPT
  std::vector<Constraint> separated;
  ConvergenceTrace trace;
  bool converged = false;     // oracle accepted x or the LP rule fired
  bool oracle_satisfied = false;
  int cuts = 0;               // separated inequalities; the iteration count
};

/// Alternates solving the relaxation `initial` (with c as objective) and
/// separating its optimum. Stops when the oracle accepts, when stop.lp
/// fires on the relaxation value, or after stop.max_iterations cuts.
CutLoopResult cut_loop(const SeparationOracle& oracle, const Vec& c, const LinearProgram& initial,
                       const StopRule& stop);

}  // namespace oracleopt
