#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "oracleopt/oracle.hpp"

namespace oracleopt {

struct PolarState;
struct GeneralState;

enum class CertificateSetting { Polar, General, Packing };

std::string to_string(CertificateSetting s);

/// A nonnegative combination of returned constraints, one inequality
/// <ball_normal, x> <= radius valid for the R-ball and (packing only) a
/// nonnegative slack charged to the rows -x_i <= 0. Together they dominate
/// <c, x> <= claimed_bound over K.
struct DualCertificate {
  CertificateSetting setting = CertificateSetting::Polar;
  std::vector<std::pair<int, double>> multipliers;  // (constraint id, weight)
  Vec ball_normal;
  double radius = 0.0;
  double ball_coefficient = 0.0;
  Vec slack;  // empty unless Packing
  double claimed_bound = 0.0;
  double incumbent_value = 0.0;  // gamma, the value of the primal point
};

struct VerifyReport {
  bool multipliers_nonnegative = false;
  bool normal_matches = false;
  bool rhs_within_bound = false;
  bool bound_above_incumbent = false;
  bool slack_nonnegative = true;
  double normal_error = 0.0;
  double aggregated_rhs = 0.0;

  bool passed() const {
    return multipliers_nonnegative && normal_matches && rhs_within_bound &&
           bound_above_incumbent && slack_nonnegative;
  }
  std::string summary() const;
};

/// Aggregates gamma * mu over the rows <a, x> <= 1 with the ball row along
/// f - q (q = sum mu a). Packing states add the slack gamma (shadow - q).
/// Throws if mu is off the simplex by more than 1e-6.
DualCertificate build_polar_certificate(const PolarState& state, double outer_radius);

/// Certificate for the general method: ((1 - lambda)/lambda) mu on the
/// unit-normalized rows and the ball row along -head(p). Requires
/// lambda > 1e-9.
DualCertificate build_general_certificate(const GeneralState& state);

/// Checks a certificate against the constraint history it refers to. Uses
/// nothing but the certificate, the rows and the objective.
VerifyReport verify_certificate(const DualCertificate& cert,
                                const std::vector<Constraint>& history, const Vec& objective);

/// Flat text, one `multiplier <id> <value>` line per row, 17 significant digits.
void write_certificate(std::ostream& out, const DualCertificate& cert);
DualCertificate read_certificate(std::istream& in);

/// The constraint history and objective a certificate refers to.
struct ConstraintSet {
  Vec objective;
  std::vector<Constraint> rows;
};

void write_constraint_set(std::ostream& out, const ConstraintSet& set);
ConstraintSet read_constraint_set(std::istream& in);

}  // namespace oracleopt
