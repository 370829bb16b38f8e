#include "oracleopt/solver_general.hpp"

#include <cmath>

#include "oracleopt/error.hpp"
#include "lp_tracker.hpp"

namespace oracleopt {

namespace {

constexpr int kRenormalizePeriod = 100;

LiftedVec combine_lifted(const std::vector<LiftedVec>& atoms, const std::vector<double>& mu) {
  LiftedVec out(Vec::Zero(atoms.front().dim()), 0.0, 1.0);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (mu[i] == 0.0) continue;
    out.head += mu[i] * atoms[i].head;
    out.tail += mu[i] * atoms[i].tail;
  }
  return out;
}

// Sets q and mu to ((keep * mu) + add * e_v) / (1 - new_lambda), where the
// new q-part weight keep + add equals 1 - new_lambda.
void reweight(GeneralState& s, double keep, int v, double add, double new_lambda) {
  const double total = 1.0 - new_lambda;
  if (total <= 1e-15) {
    // q no longer contributes to p; leave its representation untouched.
    s.lambda = new_lambda;
    return;
  }
  for (double& w : s.mu) w *= keep / total;
  if (v >= 0 && add != 0.0) s.mu[v] += add / total;
  LiftedVec q = (keep / total) * s.q;
  if (v >= 0 && add != 0.0) q = q + (add / total) * s.atoms[v];
  s.q = std::move(q);
  s.lambda = new_lambda;
}

void track_decomposition(GeneralState& s) {
  const LiftedVec rebuilt = (1.0 - s.lambda) * s.q - s.lambda * s.f;
  const double err = std::max((rebuilt.head - s.p.head).cwiseAbs().maxCoeff(),
                              std::abs(rebuilt.tail - s.p.tail));
  s.max_decomposition_error = std::max(s.max_decomposition_error, err);
}

void renormalize(GeneralState& s) {
  double sum = 0.0;
  for (double& w : s.mu) {
    w = std::max(0.0, w);
    sum += w;
  }
  for (double& w : s.mu) w /= sum;
  const LiftedVec rebuilt = combine_lifted(s.atoms, s.mu);
  const double err = std::max((rebuilt.head - s.q.head).cwiseAbs().maxCoeff(),
                              std::abs(rebuilt.tail - s.q.tail));
  s.max_decomposition_error = std::max(s.max_decomposition_error, err);
  s.q = rebuilt;
}

}  // namespace

GeneralState GeneralState::initial(const Vec& c, double outer_radius) {
  const double cn = c.norm();
  if (!(cn > 0.0)) throw InvalidArgument("objective must be nonzero");
  if (!(outer_radius > 0.0)) throw InvalidArgument("outer radius must be positive");
  const Eigen::Index n = c.size();
  GeneralState s;
  s.c_unit = c / cn;
  s.c_norm = cn;
  s.radius = outer_radius;
  s.gamma = -1.0;
  s.f = LiftedVec(s.c_unit, s.gamma, 1.0);
  s.atoms.emplace_back(Vec::Zero(n), 1.0, 1.0);
  s.rows.push_back({Vec::Zero(n), outer_radius, ConstraintForm::General});
  s.mu.push_back(1.0);
  s.q = s.atoms.front();
  s.p = s.atoms.front();
  s.lambda = 0.0;
  return s;
}

Candidate extract_candidate(const LiftedVec& p, double outer_radius) {
  Candidate out;
  out.alpha = p.tail / outer_radius;
  if (out.alpha > kAlphaTol) out.x = Vec(-p.head / out.alpha);
  return out;
}

std::optional<double> general_dual_bound(const GeneralState& s) {
  if (s.lambda < kLambdaTol) return std::nullopt;
  const double scaled = s.gamma + (2.0 / s.lambda) * rnorm(s.p);
  return s.c_norm * s.radius * scaled;
}

StepKind general_step(GeneralState& s, const SeparationOracle& oracle,
                      const UpdateStrategy& strategy) {
  const double lambda = s.lambda;
  const Candidate cand = extract_candidate(s.p, 1.0);
  StepKind kind;

  if (!cand.x) {
    kind = StepKind::ShrinkToBall;
    const LiftedSegmentPoint seg = min_rnorm_on_segment(s.p, s.atoms[0]);
    const double th = seg.coeff;
    s.p = seg.point;
    reweight(s, (1.0 - th) * (1.0 - lambda), 0, th, (1.0 - th) * lambda);
  } else {
    const Vec& xs = *cand.x;
    const double value = s.c_unit.dot(xs);
    if (value <= s.gamma) {
      kind = StepKind::ShrinkToF;
      const LiftedSegmentPoint seg = min_rnorm_on_segment(s.p, -s.f);
      const double th = seg.coeff;
      s.p = seg.point;
      const double new_lambda = lambda + th * (1.0 - lambda);
      reweight(s, (1.0 - th) * (1.0 - lambda), -1, 0.0, new_lambda);
    } else {
      const Vec x = s.radius * xs;
      const SeparationResult res = oracle.separate(x);
      ++s.oracle_calls;
      if (res.is_inside()) {
        kind = StepKind::PrimalImprove;
        const double gamma_next = value;
        const LiftedVec f_next(s.c_unit, gamma_next, 1.0);
        const double beta = 1.0 + lambda * (gamma_next - s.gamma);
        s.min_beta = std::min(s.min_beta, beta);
        const LiftedVec p_mid = ((1.0 - lambda) / beta) * s.q +
                                ((beta - 1.0) / beta) * s.atoms[0] - (lambda / beta) * f_next;
        s.max_orthogonality_error =
            std::max(s.max_orthogonality_error, std::abs(phi(p_mid).dot(phi(f_next))));
        const LiftedSegmentPoint seg = min_rnorm_on_segment(p_mid, -f_next);
        const double th = seg.coeff;
        s.p = seg.point;
        s.gamma = gamma_next;
        s.f = f_next;
        s.incumbent = x;
        const double new_lambda = (1.0 - th) * lambda / beta + th;
        // q-part: (1-th)(1-lambda)/beta on q and (1-th)(beta-1)/beta on atom 0.
        reweight(s, (1.0 - th) * (1.0 - lambda) / beta, 0, (1.0 - th) * (beta - 1.0) / beta,
                 new_lambda);
      } else {
        kind = StepKind::DualCut;
        const Constraint& cut = res.cut();
        Constraint unit = normalize_unit(cut.a, cut.b);
        // <a, x> <= R holds on K and is still violated, so a weaker b can be tightened.
        unit.b = std::min(unit.b, s.radius);
        const int new_atom = static_cast<int>(s.atoms.size());
        s.atoms.emplace_back(unit.a, unit.b / s.radius, 1.0);
        s.rows.push_back(unit);
        s.mu.push_back(0.0);
        s.separated.push_back(cut);
        const LiftedSegmentPoint seg = min_rnorm_on_segment(s.p, s.atoms.back());
        const double th = seg.coeff;
        s.p = seg.point;
        reweight(s, (1.0 - th) * (1.0 - lambda), new_atom, th, (1.0 - th) * lambda);
      }
    }
  }

  const bool full = strategy.kind == UpdateStrategy::Kind::FullyCorrective &&
                    s.t % strategy.frequency == 0;
  const bool partial = strategy.kind == UpdateStrategy::Kind::PartiallyCorrective;
  if (full || partial) {
    std::vector<Vec> pts;
    pts.reserve(s.atoms.size() + 1);
    for (const LiftedVec& a : s.atoms) pts.push_back(phi(a));
    pts.push_back(phi(-s.f));
    std::vector<double> w;
    w.reserve(pts.size());
    for (double m : s.mu) w.push_back((1.0 - s.lambda) * m);
    w.push_back(s.lambda);
    const Vec origin = Vec::Zero(pts.front().size());
    const int cap = strategy.support_cap > 0 ? strategy.support_cap
                                              : 2 * static_cast<int>(s.c_unit.size());
    const Combination cand_c =
        full ? fully_corrective_update(pts, w, origin, false)
             : partially_corrective_update(pts, w, static_cast<int>(pts.size()) - 1, origin,
                                           cap, false);
    const LiftedVec cand_p = phi_inverse(combine(pts, cand_c.weights), 1.0);
    if (rnorm(cand_p) <= rnorm(s.p) + 1e-12) {
      const double new_lambda = cand_c.weights.back();
      s.p = cand_p;
      s.lambda = new_lambda;
      if (1.0 - new_lambda > 1e-15) {
        for (std::size_t i = 0; i < s.mu.size(); ++i) s.mu[i] = cand_c.weights[i] / (1.0 - new_lambda);
        s.q = combine_lifted(s.atoms, s.mu);
      }
    }
  }
  if (s.t % kRenormalizePeriod == 0) renormalize(s);
  track_decomposition(s);
  ++s.t;
  return kind;
}

GeneralResult run_general(const SeparationOracle& oracle, const Vec& c,
                          const GeneralOptions& options) {
  if (c.size() != oracle.dimension()) throw DimensionError("objective dimension differs from oracle");
  options.strategy.validate();
  if (options.strategy.kind == UpdateStrategy::Kind::SegmentPlusNonneg) {
    throw InvalidArgument("the nonnegativity update applies to packing runs only");
  }
  const double outer = options.outer_radius.value_or(oracle.outer_radius());
  GeneralState s = GeneralState::initial(c, outer);

  GeneralResult out;
  const StopRule& stop = options.stop;
  detail::LpTracker lp(stop);
  auto record = [&](StepKind kind, int iteration) {
    TraceRow row;
    row.t = s.t;
    row.kind = kind;
    row.gamma = s.reported_gamma();
    row.dual_bound = general_dual_bound(s);
    row.residual = s.residual();
    row.oracle_calls = s.oracle_calls;
    row.lp_bound = lp.update(s.separated, iteration);
    out.trace.rows.push_back(row);
    return lp.reached() ||
           (s.incumbent.has_value() && stop.gap_reached(s.reported_gamma(), row.dual_bound));
  };

  bool done = record(StepKind::Init, 0);
  int iteration = 0;
  while (!done && iteration < stop.max_iterations) {
    const StepKind kind = general_step(s, oracle, options.strategy);
    ++iteration;
    done = record(kind, iteration);
  }

  out.converged = done;
  out.iterations = iteration;
  out.gamma = s.reported_gamma();
  out.dual_bound = general_dual_bound(s);
  out.final_lp_bound = lp.value();
  out.incumbent = s.incumbent;
  if (s.lambda >= kLambdaTol) out.certificate = build_general_certificate(s);
  out.history = s.rows;
  out.state = std::move(s);
  return out;
}

}  // namespace oracleopt
