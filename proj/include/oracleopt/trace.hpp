#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oracleopt/lp.hpp"

namespace oracleopt {

enum class StepKind {
  Init,
  Shrink,
  PrimalImprove,
  DualCut,
  ShrinkToBall,
  ShrinkToF,
  LpSolve,
};

std::string_view to_string(StepKind kind);

/// One row per state of a run. Row t describes the state after t - 1 steps
/// and `kind` is the step that produced it.
struct TraceRow {
  int t = 0;
  StepKind kind = StepKind::Init;
  std::optional<double> gamma;
  std::optional<double> dual_bound;
  double residual = 0.0;  // |f_t - q_t| or rnorm(p_t); 0 for the cut loop
  int oracle_calls = 0;
  std::optional<double> lp_bound;
};

struct ConvergenceTrace {
  std::vector<TraceRow> rows;

  /// CSV with header, 17 significant digits, empty fields for absent values.
  void write_csv(std::ostream& out) const;
};

/// Stop once the LP over the initial and all separated constraints is at
/// most `factor` times the reference optimum.
struct LpStopRule {
  LinearProgram base;  // objective, bounds and initial rows
  double reference_opt = 0.0;
  double factor = 1.01;
  int every = 1;  // recompute period in iterations
};

struct StopRule {
  std::optional<double> rel_gap;  // dual_bound - gamma <= rel_gap * |gamma|
  std::optional<double> abs_gap;  // dual_bound - gamma <= abs_gap
  std::optional<LpStopRule> lp;
  int max_iterations = 1000;

  static StopRule relative(double eps, int max_iterations = 1000) {
    StopRule s;
    s.rel_gap = eps;
    s.max_iterations = max_iterations;
    return s;
  }
  static StopRule iterations(int n) {
    StopRule s;
    s.max_iterations = n;
    return s;
  }

  bool gap_reached(double gamma, std::optional<double> dual_bound) const;
};

}  // namespace oracleopt
