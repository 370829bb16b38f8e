#include "oracleopt/lp.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "oracleopt/error.hpp"

namespace oracleopt {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;

enum class Sense { LessEqual, Equal, GreaterEqual };

// Column j of the standard form maps back to original variable
// origin[j] with sign[j]; slack-type columns have origin -1.
struct StandardForm {
  Eigen::MatrixXd tableau;  // m x (cols + 1), last column is the rhs
  std::vector<int> basis;   // basic column of each row
  std::vector<int> origin;
  std::vector<double> sign;
  Eigen::Index structural = 0;  // columns [0, structural) carry variables
  Eigen::Index first_artificial = 0;
  Vec cost;  // phase-two objective over all columns
  double cost_offset = 0.0;
  Vec shift;  // x = shift + (column combination)
};

StandardForm build(const LinearProgram& lp) {
  const Eigen::Index n = lp.num_vars();
  if (lp.lower.size() != n || lp.upper.size() != n) {
    throw DimensionError("bounds do not match the number of variables");
  }
  StandardForm sf;
  sf.shift = Vec::Zero(n);

  // Structural columns: shifted variable, or a +/- split for free ones.
  std::vector<std::vector<std::pair<int, double>>> cols_of(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::isfinite(lp.lower(j))) {
      sf.shift(j) = lp.lower(j);
      cols_of[j].push_back({static_cast<int>(sf.origin.size()), 1.0});
      sf.origin.push_back(static_cast<int>(j));
      sf.sign.push_back(1.0);
    } else {
      for (double s : {1.0, -1.0}) {
        cols_of[j].push_back({static_cast<int>(sf.origin.size()), s});
        sf.origin.push_back(static_cast<int>(j));
        sf.sign.push_back(s);
      }
    }
  }
  sf.structural = static_cast<Eigen::Index>(sf.origin.size());

  struct Row {
    Vec coef;  // over structural columns
    double rhs;
    Sense sense;
  };
  std::vector<Row> rows;
  auto add_row = [&](const Vec& a, double b, Sense sense) {
    if (a.size() != n) throw DimensionError("row dimension differs from objective");
    Vec coef = Vec::Zero(sf.structural);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (auto [c, s] : cols_of[j]) coef(c) += s * a(j);
    }
    double rhs = b - a.dot(sf.shift);
    if (rhs < 0.0) {
      coef = -coef;
      rhs = -rhs;
      if (sense == Sense::LessEqual) {
        sense = Sense::GreaterEqual;
      } else if (sense == Sense::GreaterEqual) {
        sense = Sense::LessEqual;
      }
    }
    rows.push_back({std::move(coef), rhs, sense});
  };
  for (const Constraint& r : lp.rows) add_row(r.a, r.b, Sense::LessEqual);
  for (const Constraint& r : lp.equalities) add_row(r.a, r.b, Sense::Equal);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::isfinite(lp.upper(j))) {
      if (lp.upper(j) < lp.lower(j)) throw LpInfeasible();
      Vec e = Vec::Zero(n);
      e(j) = 1.0;
      add_row(e, lp.upper(j), Sense::LessEqual);
    }
  }

  const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
  Eigen::Index slacks = 0;
  Eigen::Index artificials = 0;
  for (const Row& r : rows) {
    if (r.sense != Sense::Equal) ++slacks;
    if (r.sense != Sense::LessEqual) ++artificials;
  }
  const Eigen::Index cols = sf.structural + slacks + artificials;
  sf.first_artificial = sf.structural + slacks;
  sf.tableau = Eigen::MatrixXd::Zero(m, cols + 1);
  sf.basis.assign(m, -1);
  Eigen::Index next_slack = sf.structural;
  Eigen::Index next_art = sf.first_artificial;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Row& r = rows[i];
    sf.tableau.row(i).head(sf.structural) = r.coef.transpose();
    sf.tableau(i, cols) = r.rhs;
    if (r.sense == Sense::LessEqual) {
      sf.tableau(i, next_slack) = 1.0;
      sf.basis[i] = static_cast<int>(next_slack++);
    } else {
      if (r.sense == Sense::GreaterEqual) sf.tableau(i, next_slack++) = -1.0;
      sf.tableau(i, next_art) = 1.0;
      sf.basis[i] = static_cast<int>(next_art++);
    }
  }
  sf.origin.resize(cols, -1);
  sf.sign.resize(cols, 0.0);

  sf.cost = Vec::Zero(cols);
  for (Eigen::Index c = 0; c < sf.structural; ++c) {
    sf.cost(c) = sf.sign[c] * lp.objective(sf.origin[c]);
  }
  sf.cost_offset = lp.objective.dot(sf.shift);
  return sf;
}

void pivot(StandardForm& sf, Eigen::Index row, Eigen::Index col) {
  Eigen::MatrixXd& t = sf.tableau;
  t.row(row) /= t(row, col);
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    if (i == row) continue;
    const double factor = t(i, col);
    if (factor != 0.0) t.row(i) -= factor * t.row(row);
  }
  sf.basis[row] = static_cast<int>(col);
}

// Maximizes <cost, z> over the current tableau, entering only columns
// below `limit`. Returns false if unbounded.
bool optimize(StandardForm& sf, const Vec& cost, Eigen::Index limit, int& pivots) {
  const Eigen::Index m = sf.tableau.rows();
  const Eigen::Index rhs = sf.tableau.cols() - 1;
  bool bland = false;
  const int max_pivots = 50 * static_cast<int>(m + rhs) + 1000;
  for (int iter = 0; iter < max_pivots; ++iter) {
    // Reduced costs d_j = c_j - c_B^T B^{-1} A_j.
    Vec cb(m);
    for (Eigen::Index i = 0; i < m; ++i) cb(i) = cost(sf.basis[i]);
    const Eigen::RowVectorXd reduced =
        cost.head(limit).transpose() - cb.transpose() * sf.tableau.leftCols(limit);

    Eigen::Index enter = -1;
    double best = kCostTol;
    for (Eigen::Index j = 0; j < limit; ++j) {
      if (reduced(j) > best) {
        enter = j;
        if (bland) break;
        best = reduced(j);
      }
    }
    if (enter < 0) return true;

    Eigen::Index leave = -1;
    double ratio = kInf;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double a = sf.tableau(i, enter);
      if (a <= kPivotTol) continue;
      const double r = sf.tableau(i, rhs) / a;
      if (r < ratio - 1e-12 ||
          (r <= ratio + 1e-12 && leave >= 0 && sf.basis[i] < sf.basis[leave])) {
        ratio = std::min(ratio, r);
        leave = i;
      }
    }
    if (leave < 0) return false;
    bland = ratio <= 1e-12;
    pivot(sf, leave, enter);
    ++pivots;
  }
  throw Error("simplex pivot limit exceeded");
}

}  // namespace

LinearProgram LinearProgram::nonnegative(Vec objective) {
  LinearProgram lp;
  const Eigen::Index n = objective.size();
  lp.objective = std::move(objective);
  lp.lower = Vec::Zero(n);
  lp.upper = Vec::Constant(n, kInf);
  return lp;
}

LpSolution solve_lp(const LinearProgram& lp) {
  StandardForm sf = build(lp);
  const Eigen::Index m = sf.tableau.rows();
  const Eigen::Index cols = sf.tableau.cols() - 1;
  int pivots = 0;

  if (sf.first_artificial < cols) {
    Vec phase1 = Vec::Zero(cols);
    phase1.tail(cols - sf.first_artificial).setConstant(-1.0);
    optimize(sf, phase1, cols, pivots);
    double infeas = 0.0;
    double scale = 1.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      scale = std::max(scale, std::abs(sf.tableau(i, cols)));
      if (sf.basis[i] >= sf.first_artificial) infeas += sf.tableau(i, cols);
    }
    if (infeas > 1e-8 * scale) throw LpInfeasible();

    // Drive remaining (zero-valued) artificials out; drop redundant rows.
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (sf.basis[i] < sf.first_artificial) {
        keep.push_back(i);
        continue;
      }
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < sf.first_artificial; ++j) {
        if (std::abs(sf.tableau(i, j)) > 1e-7) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(sf, i, col);
        ++pivots;
        keep.push_back(i);
      }
    }
    if (static_cast<Eigen::Index>(keep.size()) < m) {
      Eigen::MatrixXd t(keep.size(), sf.tableau.cols());
      std::vector<int> basis;
      for (std::size_t k = 0; k < keep.size(); ++k) {
        t.row(k) = sf.tableau.row(keep[k]);
        basis.push_back(sf.basis[keep[k]]);
      }
      sf.tableau = std::move(t);
      sf.basis = std::move(basis);
    }
  }

  if (!optimize(sf, sf.cost, sf.first_artificial, pivots)) throw LpUnbounded();

  LpSolution sol;
  sol.x = sf.shift;
  for (Eigen::Index i = 0; i < sf.tableau.rows(); ++i) {
    const int col = sf.basis[i];
    const int var = sf.origin[col];
    if (var >= 0) sol.x(var) += sf.sign[col] * sf.tableau(i, cols);
    const bool split = var >= 0 && !std::isfinite(lp.lower(var));
    sol.basis.push_back(var >= 0 && !split ? var : -1);
  }
  sol.value = lp.objective.dot(sol.x);
  sol.pivots = pivots;
  return sol;
}

double lp_stop_bound(const LinearProgram& base, const std::vector<Constraint>& separated) {
  LinearProgram lp = base;
  lp.rows.insert(lp.rows.end(), separated.begin(), separated.end());
  return solve_lp(lp).value;
}

}  // namespace oracleopt
