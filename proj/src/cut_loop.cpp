#include "oracleopt/cut_loop.hpp"

#include <cmath>

#include "oracleopt/error.hpp"

namespace oracleopt {

CutLoopResult cut_loop(const SeparationOracle& oracle, const Vec& c, const LinearProgram& initial,
                       const StopRule& stop) {
  if (c.size() != oracle.dimension() || initial.num_vars() != c.size()) {
    throw DimensionError("objective, relaxation and oracle differ in dimension");
  }
  LinearProgram lp = initial;
  lp.objective = c;
  CutLoopResult out;
  int calls = 0;
  while (true) {
    LpSolution sol;
    try {
      sol = solve_lp(lp);
    } catch (const LpUnbounded&) {
      throw Error("add bounds to initial constraints");
    }
    out.x = sol.x;
    out.value = sol.value;

    TraceRow row;
    row.t = out.cuts + 1;
    row.kind = StepKind::LpSolve;
    row.dual_bound = sol.value;
    row.lp_bound = sol.value;
    row.oracle_calls = calls;
    out.trace.rows.push_back(row);

    if (stop.lp) {
      const double ref = stop.lp->reference_opt;
      if (sol.value <= stop.lp->factor * ref + 1e-9 * std::max(1.0, std::abs(ref))) {
        out.converged = true;
        break;
      }
    }
    if (out.cuts >= stop.max_iterations) break;

    const SeparationResult res = oracle.separate(sol.x);
    ++calls;
    if (res.is_inside()) {
      out.oracle_satisfied = true;
      out.converged = true;
      out.trace.rows.back().gamma = sol.value;
      out.trace.rows.back().oracle_calls = calls;
      break;
    }
    lp.rows.push_back(res.cut());
    out.separated.push_back(res.cut());
    ++out.cuts;
  }
  return out;
}

}  // namespace oracleopt
