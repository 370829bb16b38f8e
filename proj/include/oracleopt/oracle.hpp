#pragma once

#include <optional>
#include <vector>

#include "oracleopt/geometry.hpp"

namespace oracleopt {

/// Violations at or below this value are treated as satisfied.
inline constexpr double kViolationTol = 1e-7;

enum class ConstraintForm {
  General,          // plain <a, x> <= b
  PolarNormalized,  // b == 1
  UnitNormalized,   // |a| == 1
};

/// The halfspace <a, x> <= b.
struct Constraint {
  Vec a;
  double b = 0.0;
  ConstraintForm form = ConstraintForm::General;

  double violation(const Vec& x) const { return a.dot(x) - b; }
};

/// Rescales (a, b) to (a / b, 1). Requires b > kViolationTol, i.e. the
/// origin strictly satisfies the constraint.
Constraint normalize_polar(const Vec& a, double b);
/// Rescales (a, b) to (a / |a|, b / |a|).
Constraint normalize_unit(const Vec& a, double b);

class SeparationResult {
 public:
  static SeparationResult inside() { return SeparationResult{}; }
  static SeparationResult violated(Constraint c, double violation) {
    SeparationResult r;
    r.cut_ = std::move(c);
    r.violation_ = violation;
    return r;
  }

  bool is_inside() const { return !cut_.has_value(); }
  const Constraint& cut() const { return *cut_; }
  /// Absolute violation of the returned inequality in the oracle's own scaling.
  double violation() const { return violation_; }

 private:
  std::optional<Constraint> cut_;
  double violation_ = 0.0;
};

/// Access to a compact convex set K through separation. Implementations are
/// immutable after construction; separate() may be called concurrently.
class SeparationOracle {
 public:
  virtual ~SeparationOracle() = default;

  virtual SeparationResult separate(const Vec& x) const = 0;
  virtual Eigen::Index dimension() const = 0;
  /// R with K contained in the origin-centered ball of radius R.
  virtual double outer_radius() const = 0;
  /// r with the origin-centered r-ball inside K (intersected with the
  /// nonnegative orthant for packing sets), when known.
  virtual std::optional<double> inner_radius() const { return std::nullopt; }

  bool contains(const Vec& x) const { return separate(x).is_inside(); }
};

/// K = center + radius * B_2.
class BallOracle final : public SeparationOracle {
 public:
  BallOracle(Vec center, double radius);

  SeparationResult separate(const Vec& x) const override;
  Eigen::Index dimension() const override { return center_.size(); }
  double outer_radius() const override { return center_.norm() + radius_; }
  std::optional<double> inner_radius() const override;

  const Vec& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  Vec center_;
  double radius_;
};

struct BoxBounds {
  Vec lower;
  Vec upper;
};

/// K given by an explicit list of inequalities and optional box bounds.
/// Box rows are indexed after the explicit rows, as x_i <= upper_i followed
/// by -x_i <= -lower_i for each i in turn.
class PolytopeOracle final : public SeparationOracle {
 public:
  PolytopeOracle(std::vector<Constraint> rows, std::optional<BoxBounds> box,
                 std::optional<double> outer_radius = std::nullopt,
                 std::optional<double> inner_radius = std::nullopt);

  SeparationResult separate(const Vec& x) const override;
  Eigen::Index dimension() const override { return dim_; }
  double outer_radius() const override { return outer_; }
  std::optional<double> inner_radius() const override { return inner_; }

  /// All rows, explicit rows first, then box rows.
  const std::vector<Constraint>& rows() const { return rows_; }

 private:
  std::vector<Constraint> rows_;
  Eigen::Index dim_ = 0;
  double outer_ = 0.0;
  std::optional<double> inner_;
};

/// The box [-1, 1]^n.
PolytopeOracle make_cube_oracle(Eigen::Index n);

}  // namespace oracleopt
