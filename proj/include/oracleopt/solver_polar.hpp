#pragma once

#include <optional>
#include <vector>

#include "oracleopt/certificates.hpp"
#include "oracleopt/corrective.hpp"
#include "oracleopt/oracle.hpp"
#include "oracleopt/trace.hpp"

namespace oracleopt {

/// Threshold on <f - q, f + q> below which the candidate step is replaced
/// by a shrink of q toward the origin.
inline constexpr double kShrinkTol = 1e-12;

enum class PolarMode { Standard, Packing };

/// Iterate of the method for sets with the origin in the interior.
///
/// The target inequality <c, x> <= gamma is represented by f = c / gamma.
/// `atoms` holds the polar-normalized constraint normals seen so far
/// (atoms[0] is the zero vector, i.e. the trivial row 0 <= 1) and `mu`
/// convex weights over them. In Standard mode q == shadow == sum mu a; in
/// Packing mode q <= shadow == sum mu a componentwise and q <= f.
struct PolarState {
  int t = 1;
  double gamma = 0.0;
  Vec c;
  Vec f;
  Vec q;
  Vec shadow;
  std::vector<Vec> atoms;
  std::vector<Constraint> rows;  // rows[i] is <atoms[i], x> <= 1
  std::vector<double> mu;
  PolarMode mode = PolarMode::Standard;

  int oracle_calls = 0;
  std::optional<Vec> incumbent;
  std::vector<Constraint> separated;  // oracle output as returned, in order
  double min_query_coord = kInf;

  /// Fresh state with q = 0 and A = {0} plus the given initial rows.
  static PolarState initial(const Vec& c, double gamma1, PolarMode mode,
                            const std::vector<Constraint>& initial_rows = {});

  double residual() const { return (f - q).norm(); }
};

struct GammaInit {
  double gamma = 0.0;
  Vec point;  // feasible point with <c, point> == gamma
  int oracle_calls = 0;
};

/// Finds gamma1 >= (r/2)|c| with a feasible witness. With r known this is
/// the point (r / (2|c|)) c; otherwise x_i = R / (2^i |c|) c is tested for
/// i = 1, 2, ... until the oracle accepts.
GammaInit initialize_gamma(const SeparationOracle& oracle, const Vec& c, double outer_radius,
                           std::optional<double> inner_radius);

/// x_t = 2 (f - q) / <f - q, f + q>, or nullopt when that inner product is
/// at most kShrinkTol.
std::optional<Vec> candidate_point(const PolarState& state);

/// One iteration. Mutates `state` and returns the branch taken.
StepKind polar_step(PolarState& state, const SeparationOracle& oracle,
                    const UpdateStrategy& strategy);

/// gamma (1 + |f - q| R).
double dual_bound(const PolarState& state, double outer_radius);

struct PolarOptions {
  std::optional<double> gamma1;         // start value; searched for when absent
  std::optional<Vec> initial_point;     // feasible witness for gamma1, if any
  std::optional<double> inner_radius;   // overrides the oracle's
  std::optional<double> outer_radius;   // overrides the oracle's
  PolarMode mode = PolarMode::Standard;
  UpdateStrategy strategy;
  StopRule stop = StopRule::relative(0.01);
  std::vector<Constraint> initial_rows;  // known valid rows added to A at start
};

struct PolarResult {
  std::optional<Vec> incumbent;
  double gamma = 0.0;
  double dual_bound = 0.0;
  DualCertificate certificate;
  std::vector<Constraint> history;  // the rows the certificate refers to
  ConvergenceTrace trace;
  bool converged = false;
  int iterations = 0;
  std::optional<double> final_lp_bound;
  PolarState state;
};

PolarResult run_polar(const SeparationOracle& oracle, const Vec& c, const PolarOptions& options);

}  // namespace oracleopt
