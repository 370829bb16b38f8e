#include "oracleopt/trace.hpp"

#include <fmt/format.h>

#include <cmath>
#include <ostream>

namespace oracleopt {

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::Init: return "init";
    case StepKind::Shrink: return "shrink";
    case StepKind::PrimalImprove: return "primal";
    case StepKind::DualCut: return "cut";
    case StepKind::ShrinkToBall: return "shrink_ball";
    case StepKind::ShrinkToF: return "shrink_f";
    case StepKind::LpSolve: return "lp";
  }
  return "unknown";
}

namespace {

std::string field(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return {};
  return fmt::format("{:.17g}", *v);
}

}  // namespace

void ConvergenceTrace::write_csv(std::ostream& out) const {
  out << "t,step,gamma,dual_bound,residual,oracle_calls,lp_bound\n";
  for (const TraceRow& r : rows) {
    out << fmt::format("{},{},{},{},{:.17g},{},{}\n", r.t, to_string(r.kind), field(r.gamma),
                       field(r.dual_bound), r.residual, r.oracle_calls, field(r.lp_bound));
  }
}

bool StopRule::gap_reached(double gamma, std::optional<double> dual_bound) const {
  if (!dual_bound) return false;
  const double gap = *dual_bound - gamma;
  if (rel_gap && gap <= *rel_gap * std::abs(gamma)) return true;
  if (abs_gap && gap <= *abs_gap) return true;
  return false;
}

}  // namespace oracleopt
