#include "oracleopt/certificates.hpp"

#include <fmt/format.h>

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "oracleopt/error.hpp"
#include "oracleopt/solver_general.hpp"
#include "oracleopt/solver_polar.hpp"

namespace oracleopt {

std::string to_string(CertificateSetting s) {
  switch (s) {
    case CertificateSetting::Polar: return "polar";
    case CertificateSetting::General: return "general";
    case CertificateSetting::Packing: return "packing";
  }
  return "unknown";
}

std::string VerifyReport::summary() const {
  return fmt::format(
      "multipliers_nonnegative={} normal_matches={} (error {:.3g}) rhs_within_bound={} "
      "(rhs {:.17g}) bound_above_incumbent={} slack_nonnegative={}",
      multipliers_nonnegative, normal_matches, normal_error, rhs_within_bound, aggregated_rhs,
      bound_above_incumbent, slack_nonnegative);
}

VerifyReport verify_certificate(const DualCertificate& cert,
                                const std::vector<Constraint>& history, const Vec& objective) {
  VerifyReport rep;
  const Eigen::Index n = objective.size();
  Vec normal = Vec::Zero(n);
  double rhs = 0.0;
  rep.multipliers_nonnegative = true;
  for (const auto& [id, w] : cert.multipliers) {
    if (id < 0 || id >= static_cast<int>(history.size())) {
      throw InvalidArgument(fmt::format("certificate refers to unknown constraint {}", id));
    }
    if (w < -1e-9) rep.multipliers_nonnegative = false;
    normal += w * history[id].a;
    rhs += w * history[id].b;
  }
  if (cert.ball_coefficient < -1e-9) rep.multipliers_nonnegative = false;
  if (cert.ball_coefficient != 0.0) {
    normal += cert.ball_coefficient * cert.ball_normal;
    rhs += cert.ball_coefficient * cert.radius;
  }
  if (cert.setting == CertificateSetting::Packing) {
    if (cert.slack.size() != n) throw DimensionError("packing certificate slack has wrong size");
    rep.slack_nonnegative = cert.slack.minCoeff() >= -1e-9;
    normal -= cert.slack;
  }
  rep.normal_error = (normal - objective).cwiseAbs().maxCoeff();
  rep.normal_matches = rep.normal_error <= 1e-6;
  rep.aggregated_rhs = rhs;
  rep.rhs_within_bound = rhs <= cert.claimed_bound + 1e-6;
  rep.bound_above_incumbent = cert.claimed_bound >= cert.incumbent_value - 1e-9;
  return rep;
}

DualCertificate build_polar_certificate(const PolarState& state, double outer_radius) {
  double sum = 0.0;
  for (double w : state.mu) {
    if (w < -1e-12) throw Error("stale decomposition: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-6) throw Error("stale decomposition: weights off the simplex");
  const Eigen::Index n = state.c.size();
  Vec shadow = Vec::Zero(n);
  for (std::size_t i = 0; i < state.atoms.size(); ++i) shadow += state.mu[i] * state.atoms[i];
  const bool packing = state.mode == PolarMode::Packing;
  const Vec qc = packing ? Vec(state.q.cwiseMin(shadow)) : shadow;

  DualCertificate cert;
  cert.setting = packing ? CertificateSetting::Packing : CertificateSetting::Polar;
  const double g = state.gamma;
  for (std::size_t i = 0; i < state.mu.size(); ++i) {
    if (state.mu[i] != 0.0) cert.multipliers.emplace_back(static_cast<int>(i), g * state.mu[i]);
  }
  const Vec d = state.f - qc;
  const double dn = d.norm();
  cert.radius = outer_radius;
  if (dn > 0.0) {
    cert.ball_normal = d / dn;
    cert.ball_coefficient = g * dn;
  } else {
    cert.ball_normal = state.c / state.c.norm();
    cert.ball_coefficient = 0.0;
  }
  if (packing) cert.slack = (g * (shadow - qc)).cwiseMax(0.0);
  cert.claimed_bound = g * (1.0 + dn * outer_radius);
  cert.incumbent_value = g;
  return cert;
}

DualCertificate build_general_certificate(const GeneralState& state) {
  const double lambda = state.lambda;
  if (lambda <= kLambdaTol) throw Error("no certificate yet: lambda is zero");
  const Eigen::Index n = state.c_unit.size();
  DualCertificate cert;
  cert.setting = CertificateSetting::General;
  Vec u = state.c_unit;
  for (std::size_t i = 0; i < state.mu.size(); ++i) {
    const double w = (1.0 - lambda) * state.mu[i] / lambda;
    if (w == 0.0) continue;
    cert.multipliers.emplace_back(static_cast<int>(i), state.c_norm * w);
    u -= w * state.atoms[i].head;
  }
  const double un = u.norm();
  cert.radius = state.radius;
  if (un > 0.0) {
    cert.ball_normal = u / un;
    cert.ball_coefficient = state.c_norm * un;
  } else {
    cert.ball_normal = Vec::Zero(n);
    cert.ball_normal(0) = 1.0;
    cert.ball_coefficient = 0.0;
  }
  cert.claimed_bound = *general_dual_bound(state);
  cert.incumbent_value = state.reported_gamma();
  return cert;
}

namespace {

std::string join(const Vec& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ' ';
    out += fmt::format("{:.17g}", v(i));
  }
  return out;
}

Vec read_vec(std::istringstream& in, int line) {
  std::vector<double> vals;
  double v;
  while (in >> v) vals.push_back(v);
  if (!in.eof()) throw ParseError(line, "expected numbers");
  return Eigen::Map<Vec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

template <typename T>
T read_one(std::istringstream& in, int line, const char* what) {
  T v;
  if (!(in >> v)) throw ParseError(line, std::string("expected ") + what);
  return v;
}

}  // namespace

void write_certificate(std::ostream& out, const DualCertificate& cert) {
  out << "# oracle-opt dual certificate\n";
  out << "setting " << to_string(cert.setting) << '\n';
  out << fmt::format("claimed_bound {:.17g}\n", cert.claimed_bound);
  out << fmt::format("incumbent_value {:.17g}\n", cert.incumbent_value);
  out << fmt::format("radius {:.17g}\n", cert.radius);
  out << fmt::format("ball_coefficient {:.17g}\n", cert.ball_coefficient);
  out << "ball_normal " << join(cert.ball_normal) << '\n';
  if (cert.setting == CertificateSetting::Packing) out << "slack " << join(cert.slack) << '\n';
  for (const auto& [id, w] : cert.multipliers) out << fmt::format("multiplier {} {:.17g}\n", id, w);
}

DualCertificate read_certificate(std::istream& in) {
  DualCertificate cert;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty() || text[0] == '#') continue;
    std::istringstream ls(text);
    std::string key;
    ls >> key;
    if (key == "setting") {
      const auto s = read_one<std::string>(ls, line, "setting name");
      if (s == "polar") {
        cert.setting = CertificateSetting::Polar;
      } else if (s == "general") {
        cert.setting = CertificateSetting::General;
      } else if (s == "packing") {
        cert.setting = CertificateSetting::Packing;
      } else {
        throw ParseError(line, "unknown setting '" + s + "'");
      }
    } else if (key == "claimed_bound") {
      cert.claimed_bound = read_one<double>(ls, line, "bound");
    } else if (key == "incumbent_value") {
      cert.incumbent_value = read_one<double>(ls, line, "value");
    } else if (key == "radius") {
      cert.radius = read_one<double>(ls, line, "radius");
    } else if (key == "ball_coefficient") {
      cert.ball_coefficient = read_one<double>(ls, line, "coefficient");
    } else if (key == "ball_normal") {
      cert.ball_normal = read_vec(ls, line);
    } else if (key == "slack") {
      cert.slack = read_vec(ls, line);
    } else if (key == "multiplier") {
      const int id = read_one<int>(ls, line, "constraint id");
      const double w = read_one<double>(ls, line, "multiplier");
      cert.multipliers.emplace_back(id, w);
    } else {
      throw ParseError(line, "unknown key '" + key + "'");
    }
  }
  return cert;
}

void write_constraint_set(std::ostream& out, const ConstraintSet& set) {
  out << "# oracle-opt constraint set: row <id> <b> <a_1 ... a_n>\n";
  out << "objective " << join(set.objective) << '\n';
  for (std::size_t i = 0; i < set.rows.size(); ++i) {
    out << fmt::format("row {} {:.17g} ", i, set.rows[i].b) << join(set.rows[i].a) << '\n';
  }
}

ConstraintSet read_constraint_set(std::istream& in) {
  ConstraintSet set;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty() || text[0] == '#') continue;
    std::istringstream ls(text);
    std::string key;
    ls >> key;
    if (key == "objective") {
      set.objective = read_vec(ls, line);
    } else if (key == "row") {
      const int id = read_one<int>(ls, line, "row id");
      if (id != static_cast<int>(set.rows.size())) throw ParseError(line, "row ids must be consecutive");
      Constraint c;
      c.b = read_one<double>(ls, line, "right-hand side");
      c.a = read_vec(ls, line);
      if (c.a.size() != set.objective.size()) throw ParseError(line, "row has wrong dimension");
      set.rows.push_back(std::move(c));
    } else {
      throw ParseError(line, "unknown key '" + key + "'");
    }
  }
  return set;
}

}  // namespace oracleopt
