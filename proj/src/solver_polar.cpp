#include "oracleopt/solver_polar.hpp"

#include <cmath>

#include "oracleopt/error.hpp"
#include "lp_tracker.hpp"

namespace oracleopt {

namespace {

constexpr int kRenormalizePeriod = 100;

// Index of an atom equal to `a`, or -1.
int find_atom(const std::vector<Vec>& atoms, const Vec& a) {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i] == a) return static_cast<int>(i);
  }
  return -1;
}

// mu <- (1 - lambda) mu + lambda e_v
void blend_weights(std::vector<double>& mu, int v, double lambda) {
  for (double& w : mu) w *= (1.0 - lambda);
  mu[v] += lambda;
}

void renormalize(PolarState& s) {
  double sum = 0.0;
  for (double& w : s.mu) {
    w = std::max(0.0, w);
    sum += w;
  }
  for (double& w : s.mu) w /= sum;
  s.shadow = combine(s.atoms, s.mu);
  if (s.mode == PolarMode::Standard) {
    s.q = s.shadow;
  } else {
    s.q = s.q.cwiseMin(s.shadow).cwiseMin(s.f);
  }
}

}  // namespace

PolarState PolarState::initial(const Vec& c, double gamma1, PolarMode mode,
                               const std::vector<Constraint>& initial_rows) {
  if (!(gamma1 > 0.0)) throw InvalidArgument("gamma1 must be positive");
  PolarState s;
  const Eigen::Index n = c.size();
  s.c = c;
  s.gamma = gamma1;
  s.f = c / gamma1;
  s.q = Vec::Zero(n);
  s.shadow = Vec::Zero(n);
  s.atoms.push_back(Vec::Zero(n));
  s.rows.push_back({Vec::Zero(n), 1.0, ConstraintForm::PolarNormalized});
  s.mu.push_back(1.0);
  for (const Constraint& r : initial_rows) {
    if (r.a.size() != n) throw DimensionError("initial row has wrong dimension");
    Constraint pc = normalize_polar(r.a, r.b);
    if (find_atom(s.atoms, pc.a) >= 0) continue;
    s.atoms.push_back(pc.a);
    s.rows.push_back(std::move(pc));
    s.mu.push_back(0.0);
  }
  s.mode = mode;
  return s;
}

GammaInit initialize_gamma(const SeparationOracle& oracle, const Vec& c, double outer_radius,
                           std::optional<double> inner_radius) {
  const double cn = c.norm();
  if (!(cn > 0.0)) throw InvalidArgument("objective must be nonzero");
  GammaInit out;
  if (inner_radius) {
    out.point = (*inner_radius / (2.0 * cn)) * c;
    out.gamma = c.dot(out.point);
    return out;
  }
  const int cap = static_cast<int>(std::ceil(std::log2(outer_radius / 1e-12)));
  double scale = outer_radius / cn;
  for (int i = 1; i <= cap; ++i) {
    scale /= 2.0;
    Vec x = scale * c;
    ++out.oracle_calls;
    if (oracle.contains(x)) {
      out.gamma = c.dot(x);
      out.point = std::move(x);
      return out;
    }
  }
  throw Error("K appears empty or R wrong");
}

std::optional<Vec> candidate_point(const PolarState& state) {
  const Vec d = state.f - state.q;
  const double s = d.dot(state.f + state.q);
  if (s <= kShrinkTol) return std::nullopt;
  return Vec((2.0 / s) * d);
}

double dual_bound(const PolarState& state, double outer_radius) {
  return state.gamma * (1.0 + state.residual() * outer_radius);
}

StepKind polar_step(PolarState& s, const SeparationOracle& oracle,
                    const UpdateStrategy& strategy) {
  const bool packing = s.mode == PolarMode::Packing;
  StepKind kind = StepKind::Shrink;
  int v = 0;  // atom the segment heads to; 0 is the zero vector

  if (const std::optional<Vec> x = candidate_point(s)) {
    s.min_query_coord = std::min(s.min_query_coord, x->minCoeff());
    const SeparationResult res = oracle.separate(*x);
    ++s.oracle_calls;
    if (res.is_inside()) {
      kind = StepKind::PrimalImprove;
      const double value = s.c.dot(*x);
      if (value >= s.gamma) {
        s.gamma = value;
        s.f = s.c / s.gamma;
        s.incumbent = *x;
      }
    } else {
      kind = StepKind::DualCut;
      const Constraint& cut = res.cut();
      Constraint pc = normalize_polar(cut.a, cut.b);
      v = find_atom(s.atoms, pc.a);
      if (v < 0) {
        v = static_cast<int>(s.atoms.size());
        s.atoms.push_back(pc.a);
        s.rows.push_back(std::move(pc));
        s.mu.push_back(0.0);
        s.separated.push_back(cut);
      }
    }
  }

  const Vec& target = s.atoms[v];
  if (packing && strategy.kind == UpdateStrategy::Kind::SegmentPlusNonneg) {
    const OrthantSegmentPoint best = nonneg_corrective_update(s.f, s.shadow, target);
    const SegmentPoint plain = project_point_to_segment(s.q, target, s.f);
    const Vec plain_q = plain.point.cwiseMin(s.f);
    const Vec best_q = best.q.cwiseMin(s.f);
    if ((s.f - best_q).norm() <= (s.f - plain_q).norm() + 1e-12) {
      s.shadow = best.q;
      blend_weights(s.mu, v, best.coeff);
      s.q = best_q;
    } else {
      s.shadow += plain.coeff * (target - s.shadow);
      blend_weights(s.mu, v, plain.coeff);
      s.q = plain_q;
    }
  } else {
    const SegmentPoint seg = project_point_to_segment(s.q, target, s.f);
    s.q = seg.point;
    if (packing) {
      s.shadow += seg.coeff * (target - s.shadow);
      s.q = s.q.cwiseMin(s.f);
    } else {
      s.shadow = s.q;
    }
    blend_weights(s.mu, v, seg.coeff);
  }

  const bool full = strategy.kind == UpdateStrategy::Kind::FullyCorrective &&
                    s.t % strategy.frequency == 0;
  const bool partial = strategy.kind == UpdateStrategy::Kind::PartiallyCorrective;
  if (full || partial) {
    const int cap = strategy.support_cap > 0 ? strategy.support_cap
                                              : 2 * static_cast<int>(s.c.size());
    const Combination cand =
        full ? fully_corrective_update(s.atoms, s.mu, s.f, packing)
             : partially_corrective_update(s.atoms, s.mu, v, s.f, cap, packing);
    const Vec cand_shadow = combine(s.atoms, cand.weights);
    const Vec cand_q = packing ? cand.point.cwiseMin(s.f).cwiseMin(cand_shadow) : cand_shadow;
    if ((s.f - cand_q).norm() <= (s.f - s.q).norm() + 1e-12) {
      s.mu = cand.weights;
      s.shadow = cand_shadow;
      s.q = cand_q;
    }
  }

  if (strategy.sparsify_every && s.t % *strategy.sparsify_every == 0) {
    const SparsifyResult sp = sparsify(s.shadow, s.f, s.atoms, s.mu);
    s.mu = sp.weights;
    s.shadow = combine(s.atoms, s.mu);
    if (!packing) s.q = s.shadow;
  }

  if (s.t % kRenormalizePeriod == 0) renormalize(s);
  ++s.t;
  return kind;
}

PolarResult run_polar(const SeparationOracle& oracle, const Vec& c, const PolarOptions& options) {
  if (c.size() != oracle.dimension()) throw DimensionError("objective dimension differs from oracle");
  if (!(c.norm() > 0.0)) throw InvalidArgument("objective must be nonzero");
  if (options.mode == PolarMode::Packing && c.minCoeff() < 0.0) {
    throw InvalidArgument("packing mode needs a nonnegative objective");
  }
  options.strategy.validate();
  const double outer = options.outer_radius.value_or(oracle.outer_radius());
  const std::optional<double> inner =
      options.inner_radius ? options.inner_radius : oracle.inner_radius();

  PolarResult out;
  double gamma1 = 0.0;
  int init_calls = 0;
  if (options.gamma1) {
    gamma1 = *options.gamma1;
    out.incumbent = options.initial_point;
  } else {
    GammaInit init = initialize_gamma(oracle, c, outer, inner);
    gamma1 = init.gamma;
    init_calls = init.oracle_calls;
    out.incumbent = std::move(init.point);
  }

  PolarState s = PolarState::initial(c, gamma1, options.mode, options.initial_rows);
  s.oracle_calls = init_calls;
  s.incumbent = out.incumbent;

  const StopRule& stop = options.stop;
  detail::LpTracker lp(stop);
  auto record = [&](StepKind kind, int iteration) {
    TraceRow row;
    row.t = s.t;
    row.kind = kind;
    row.gamma = s.gamma;
    row.dual_bound = dual_bound(s, outer);
    row.residual = s.residual();
    row.oracle_calls = s.oracle_calls;
    row.lp_bound = lp.update(s.separated, iteration);
    out.trace.rows.push_back(row);
    return lp.reached() || stop.gap_reached(s.gamma, row.dual_bound);
  };

  bool done = record(StepKind::Init, 0);
  int iteration = 0;
  while (!done && iteration < stop.max_iterations) {
    const StepKind kind = polar_step(s, oracle, options.strategy);
    ++iteration;
    done = record(kind, iteration);
  }

  out.converged = done;
  out.iterations = iteration;
  out.gamma = s.gamma;
  out.dual_bound = dual_bound(s, outer);
  out.final_lp_bound = lp.value();
  out.incumbent = s.incumbent;
  out.certificate = build_polar_certificate(s, outer);
  out.history = s.rows;
  out.state = std::move(s);
  return out;
}

}  // namespace oracleopt
