#include "oracleopt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracleopt/error.hpp"

namespace oracleopt {

namespace {

void require_same_dim(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionError("vector dimensions differ");
}

void require_same_scale(const LiftedVec& u, const LiftedVec& v) {
  if (u.head.size() != v.head.size()) throw DimensionError("lifted vector dimensions differ");
  if (u.scale != v.scale) throw InvalidArgument("lifted vectors use different scales R");
}

}  // namespace

SegmentPoint project_point_to_segment(const Vec& x, const Vec& y, const Vec& z) {
  require_same_dim(x, y);
  require_same_dim(x, z);
  const Vec d = y - x;
  const double dd = d.squaredNorm();
  if (dd <= kGeometryTol * kGeometryTol) return {x, 0.0};
  const double lambda = std::clamp((z - x).dot(d) / dd, 0.0, 1.0);
  return {x + lambda * d, lambda};
}

LiftedVec operator+(const LiftedVec& u, const LiftedVec& v) {
  require_same_scale(u, v);
  return {u.head + v.head, u.tail + v.tail, u.scale};
}

LiftedVec operator-(const LiftedVec& u, const LiftedVec& v) {
  require_same_scale(u, v);
  return {u.head - v.head, u.tail - v.tail, u.scale};
}

LiftedVec operator-(const LiftedVec& u) { return {-u.head, -u.tail, u.scale}; }

LiftedVec operator*(double s, const LiftedVec& u) { return {s * u.head, s * u.tail, u.scale}; }

double rnorm(const LiftedVec& v) {
  const double t = v.tail / v.scale;
  return std::sqrt(v.head.squaredNorm() + t * t);
}

double rinner(const LiftedVec& u, const LiftedVec& v) {
  require_same_scale(u, v);
  return u.head.dot(v.head) + u.tail * v.tail / u.scale;
}

Vec phi(const LiftedVec& v) {
  Vec w(v.head.size() + 1);
  w.head(v.head.size()) = v.head;
  w(v.head.size()) = v.tail / v.scale;
  return w;
}

LiftedVec phi_inverse(const Vec& w, double scale) {
  const Eigen::Index n = w.size() - 1;
  return {w.head(n), w(n) * scale, scale};
}

LiftedSegmentPoint min_rnorm_on_segment(const LiftedVec& u, const LiftedVec& v) {
  require_same_scale(u, v);
  const Vec pu = phi(u);
  const Vec pv = phi(v);
  const SegmentPoint s = project_point_to_segment(pu, pv, Vec::Zero(pu.size()));
  return {phi_inverse(s.point, u.scale), s.coeff};
}

OrthantDistance dist_to_shifted_orthant(const Vec& f, const Vec& q) {
  require_same_dim(f, q);
  Vec w = f.cwiseMin(q);
  return {(f - w).norm(), std::move(w)};
}

OrthantSegmentPoint min_piecewise_quadratic_on_segment(const Vec& f, const Vec& u,
                                                       const Vec& v) {
  require_same_dim(f, u);
  require_same_dim(f, v);
  const Vec g = f - u;
  const Vec d = v - u;
  const Eigen::Index n = f.size();

  // Squared distance at lambda: sum_i max(g_i - lambda d_i, 0)^2.
  auto value = [&](double lambda) {
    return (g - lambda * d).cwiseMax(0.0).squaredNorm();
  };

  std::vector<double> cuts{0.0, 1.0};
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(d(i)) <= kGeometryTol) continue;
    const double b = g(i) / d(i);
    if (b > 0.0 && b < 1.0) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double best_lambda = 0.0;
  double best_value = value(0.0);
  auto consider = [&](double lambda) {
    const double val = value(lambda);
    if (val < best_value - kGeometryTol * (1.0 + best_value)) {
      best_value = val;
      best_lambda = lambda;
    }
  };

  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    const double mid = 0.5 * (lo + hi);
    // Components positive at the midpoint stay active on the whole piece.
    double num = 0.0;
    double den = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (g(i) - mid * d(i) > 0.0) {
        num += g(i) * d(i);
        den += d(i) * d(i);
      }
    }
    consider(lo);
    if (den > 0.0) consider(std::clamp(num / den, lo, hi));
    consider(hi);
  }

  OrthantSegmentPoint out;
  out.coeff = best_lambda;
  out.q = u + best_lambda * d;
  out.dist = std::sqrt(best_value);
  return out;
}

}  // namespace oracleopt
