#pragma once

#include <optional>
#include <vector>

#include "oracleopt/certificates.hpp"
#include "oracleopt/corrective.hpp"
#include "oracleopt/oracle.hpp"
#include "oracleopt/trace.hpp"

namespace oracleopt {

/// alpha <= this is treated as "no candidate".
inline constexpr double kAlphaTol = 1e-12;
/// Smallest lambda for which a dual bound is reported.
inline constexpr double kLambdaTol = 1e-9;

/// Iterate of the method for general K with z + rB in K in RB.
///
/// The state lives in coordinates scaled by 1/R (x' = x / R, rows
/// (a, b / R)) with a unit objective, so every lifted vector has scale 1
/// there and the lifted norm is Euclidean. Values reported outside are
/// multiplied back by |c| R.
///
/// p = (1 - lambda) q - lambda f with q = sum mu atoms, f = (c_unit, gamma).
/// atoms[0] is (0, 1), the scaled form of the trivial row <0, x> <= R.
struct GeneralState {
  int t = 1;
  double gamma = -1.0;  // scaled units
  Vec c_unit;
  double c_norm = 1.0;
  double radius = 1.0;  // R of the original coordinates
  LiftedVec f;
  LiftedVec p;
  LiftedVec q;
  double lambda = 0.0;
  std::vector<LiftedVec> atoms;
  std::vector<Constraint> rows;  // original-coordinate unit rows; rows[0] is 0 <= R
  std::vector<double> mu;

  int oracle_calls = 0;
  std::optional<Vec> incumbent;  // original coordinates
  std::vector<Constraint> separated;

  // Running diagnostics of the maintained identities.
  double max_decomposition_error = 0.0;
  double max_orthogonality_error = 0.0;
  double min_beta = kInf;

  static GeneralState initial(const Vec& c, double outer_radius);

  double reported_gamma() const { return c_norm * radius * gamma; }
  double residual() const { return rnorm(p); }
};

struct Candidate {
  double alpha = 0.0;
  std::optional<Vec> x;
};

/// (-alpha x, alpha R) <- p.
Candidate extract_candidate(const LiftedVec& p, double outer_radius);

StepKind general_step(GeneralState& state, const SeparationOracle& oracle,
                      const UpdateStrategy& strategy = {});

/// gamma + (2R / lambda) rnorm(p) in original units, or nullopt while
/// lambda < kLambdaTol.
std::optional<double> general_dual_bound(const GeneralState& state);

struct GeneralOptions {
  std::optional<double> outer_radius;
  UpdateStrategy strategy;
  StopRule stop = StopRule::relative(0.01);
};

struct GeneralResult {
  std::optional<Vec> incumbent;
  double gamma = 0.0;
  std::optional<double> dual_bound;
  std::optional<DualCertificate> certificate;
  std::vector<Constraint> history;
  ConvergenceTrace trace;
  bool converged = false;
  int iterations = 0;
  std::optional<double> final_lp_bound;
  GeneralState state;
};

GeneralResult run_general(const SeparationOracle& oracle, const Vec& c,
                          const GeneralOptions& options);

}  // namespace oracleopt
