#pragma once

#include <Eigen/Core>

namespace oracleopt {

using Vec = Eigen::VectorXd;

/// Absolute tolerance for comparisons inside the geometry layer.
inline constexpr double kGeometryTol = 1e-12;

/// A point on a segment [from, to] together with its coefficient,
/// point = from + coeff * (to - from).
struct SegmentPoint {
  Vec point;
  double coeff = 0.0;
};

/// Euclidean projection of z onto the segment [x, y]. A degenerate segment
/// (x == y) yields coeff 0.
SegmentPoint project_point_to_segment(const Vec& x, const Vec& y, const Vec& z);

/// A vector (head, tail) of R^{n+1} measured in the lifted norm
/// sqrt(|head|^2 + tail^2 / scale^2).
struct LiftedVec {
  Vec head;
  double tail = 0.0;
  double scale = 1.0;

  LiftedVec() = default;
  LiftedVec(Vec h, double t, double r) : head(std::move(h)), tail(t), scale(r) {}

  Eigen::Index dim() const { return head.size(); }
};

LiftedVec operator+(const LiftedVec& u, const LiftedVec& v);
LiftedVec operator-(const LiftedVec& u, const LiftedVec& v);
LiftedVec operator-(const LiftedVec& u);
LiftedVec operator*(double s, const LiftedVec& u);

double rnorm(const LiftedVec& v);
/// <(a,b),(a',b')>_R = <a,a'> + b b' / R.
double rinner(const LiftedVec& u, const LiftedVec& v);

/// (a, b) -> (a, b / R), the isometry taking the lifted norm to the
/// Euclidean norm of R^{n+1}.
Vec phi(const LiftedVec& v);
LiftedVec phi_inverse(const Vec& w, double scale);

struct LiftedSegmentPoint {
  LiftedVec point;
  double coeff = 0.0;
};

/// Minimizer of rnorm over [u, v], found by projecting the origin onto
/// [phi(u), phi(v)].
LiftedSegmentPoint min_rnorm_on_segment(const LiftedVec& u, const LiftedVec& v);

struct OrthantDistance {
  double dist = 0.0;
  Vec witness;  // min(f, q), the nearest point of q - R^n_+
};

/// Distance from f to the shifted orthant q - R^n_+.
OrthantDistance dist_to_shifted_orthant(const Vec& f, const Vec& q);

struct OrthantSegmentPoint {
  Vec q;
  double coeff = 0.0;
  double dist = 0.0;
};

/// Minimizes lambda -> dist(f, u + lambda (v - u) - R^n_+) over [0, 1]. The
/// objective is convex and piecewise quadratic with breakpoints where
/// f_i = u_i + lambda (v_i - u_i); ties go to the smallest lambda.
OrthantSegmentPoint min_piecewise_quadratic_on_segment(const Vec& f, const Vec& u,
                                                       const Vec& v);

}  // namespace oracleopt
