#include "oracleopt/oracle.hpp"

#include <cmath>

#include "oracleopt/error.hpp"

namespace oracleopt {

Constraint normalize_polar(const Vec& a, double b) {
  if (b <= kViolationTol) {
    throw InvalidArgument("constraint cuts off origin; polar setting violated");
  }
  return {a / b, 1.0, ConstraintForm::PolarNormalized};
}

Constraint normalize_unit(const Vec& a, double b) {
  const double norm = a.norm();
  if (norm < 1e-12) throw InvalidArgument("constraint normal is zero");
  return {a / norm, b / norm, ConstraintForm::UnitNormalized};
}

BallOracle::BallOracle(Vec center, double radius) : center_(std::move(center)), radius_(radius) {
  if (!(radius_ > 0.0)) throw InvalidArgument("ball radius must be positive");
}

std::optional<double> BallOracle::inner_radius() const {
  const double r = radius_ - center_.norm();
  if (r > 0.0) return r;
  return std::nullopt;
}

SeparationResult BallOracle::separate(const Vec& x) const {
  if (x.size() != center_.size()) throw DimensionError("query has wrong dimension");
  const Vec d = x - center_;
  const double dist = d.norm();
  if (dist <= radius_ + kViolationTol) return SeparationResult::inside();
  Constraint c;
  c.a = d / dist;
  c.b = c.a.dot(center_) + radius_;
  c.form = ConstraintForm::UnitNormalized;
  const double viol = c.violation(x);
  return SeparationResult::violated(std::move(c), viol);
}

PolytopeOracle::PolytopeOracle(std::vector<Constraint> rows, std::optional<BoxBounds> box,
                               std::optional<double> outer_radius,
                               std::optional<double> inner_radius)
    : rows_(std::move(rows)), inner_(inner_radius) {
  if (rows_.empty() && !box) throw InvalidArgument("polytope oracle needs rows or box bounds");
  if (!rows_.empty()) dim_ = rows_.front().a.size();
  if (box) {
    if (box->lower.size() != box->upper.size()) throw DimensionError("box bounds differ in size");
    if (!rows_.empty() && box->lower.size() != dim_) throw DimensionError("box and rows differ");
    dim_ = box->lower.size();
  }
  for (const Constraint& r : rows_) {
    if (r.a.size() != dim_) throw DimensionError("rows differ in dimension");
  }
  if (box) {
    for (Eigen::Index i = 0; i < dim_; ++i) {
      Vec e = Vec::Zero(dim_);
      e(i) = 1.0;
      rows_.push_back({e, box->upper(i), ConstraintForm::UnitNormalized});
      rows_.push_back({-e, -box->lower(i), ConstraintForm::UnitNormalized});
    }
  }
  if (outer_radius) {
    outer_ = *outer_radius;
  } else if (box) {
    outer_ = box->lower.cwiseAbs().cwiseMax(box->upper.cwiseAbs()).norm();
  } else {
    throw InvalidArgument("outer radius required when no box bounds are given");
  }
}

SeparationResult PolytopeOracle::separate(const Vec& x) const {
  if (x.size() != dim_) throw DimensionError("query has wrong dimension");
  double best = kViolationTol;
  const Constraint* worst = nullptr;
  for (const Constraint& r : rows_) {
    const double v = r.violation(x);
    if (v > best) {
      best = v;
      worst = &r;
    }
  }
  if (worst == nullptr) return SeparationResult::inside();
  return SeparationResult::violated(*worst, best);
}

PolytopeOracle make_cube_oracle(Eigen::Index n) {
  return PolytopeOracle({}, BoxBounds{Vec::Constant(n, -1.0), Vec::Constant(n, 1.0)},
                        std::sqrt(static_cast<double>(n)), 1.0);
}

}  // namespace oracleopt
