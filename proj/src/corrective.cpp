#include "oracleopt/corrective.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracleopt/error.hpp"
#include "oracleopt/lp.hpp"

namespace oracleopt {

void UpdateStrategy::validate() const {
  if (kind == Kind::FullyCorrective && frequency < 1) {
    throw InvalidArgument("fully corrective frequency must be at least 1");
  }
  if (kind == Kind::PartiallyCorrective && support_cap != 0 && support_cap < 2) {
    throw InvalidArgument("partially corrective support cap must be at least 2");
  }
  if (sparsify_every && *sparsify_every < 1) {
    throw InvalidArgument("sparsify period must be at least 1");
  }
}

Vec combine(const std::vector<Vec>& atoms, const std::vector<double>& weights) {
  if (atoms.empty()) throw InvalidArgument("empty atom list");
  Vec out = Vec::Zero(atoms.front().size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (weights[i] != 0.0) out += weights[i] * atoms[i];
  }
  return out;
}

namespace {

constexpr double kWeightEps = 1e-14;

// Generators are the shifted atoms (indices < m) followed by the rays
// -e_i (indices m + i).
class Generators {
 public:
  Generators(const Vec& target, const std::vector<Vec>& atoms, bool rays)
      : target_(target), atoms_(atoms), m_(static_cast<int>(atoms.size())),
        n_(static_cast<int>(target.size())), rays_(rays) {}

  int count() const { return m_ + (rays_ ? n_ : 0); }
  bool is_point(int g) const { return g < m_; }

  Vec vec(int g) const {
    if (g < m_) return atoms_[g] - target_;
    Vec d = Vec::Zero(n_);
    d(g - m_) = -1.0;
    return d;
  }

  // <x, vec(g)>
  double dot(const Vec& x, int g) const {
    if (g < m_) return x.dot(atoms_[g]) - x.dot(target_);
    return -x(g - m_);
  }

 private:
  const Vec& target_;
  const std::vector<Vec>& atoms_;
  int m_;
  int n_;
  bool rays_;
};

// Minimizes |sum_g z_g vec(g)| over the affine hull of the corral (point
// weights sum to one, ray weights free).
std::vector<double> affine_minimizer(const Generators& gen, const std::vector<int>& corral) {
  int base = -1;
  for (int g : corral) {
    if (gen.is_point(g)) {
      base = g;
      break;
    }
  }
  const Vec p0 = gen.vec(base);
  const int k = static_cast<int>(corral.size());
  std::vector<double> z(k, 0.0);
  if (k == 1) {
    z[0] = 1.0;
    return z;
  }
  Eigen::MatrixXd b(p0.size(), k - 1);
  std::vector<int> col_of(k, -1);
  int c = 0;
  for (int i = 0; i < k; ++i) {
    if (corral[i] == base) continue;
    Vec v = gen.vec(corral[i]);
    if (gen.is_point(corral[i])) v -= p0;
    b.col(c) = v;
    col_of[i] = c++;
  }
  const Vec y = b.colPivHouseholderQr().solve(-p0);
  double point_sum = 0.0;
  for (int i = 0; i < k; ++i) {
    if (col_of[i] < 0) continue;
    z[i] = y(col_of[i]);
    if (gen.is_point(corral[i])) point_sum += z[i];
  }
  for (int i = 0; i < k; ++i) {
    if (corral[i] == base) z[i] = 1.0 - point_sum;
  }
  return z;
}

Vec corral_point(const Generators& gen, const std::vector<int>& corral,
                 const std::vector<double>& w, Eigen::Index n) {
  Vec x = Vec::Zero(n);
  for (std::size_t i = 0; i < corral.size(); ++i) x += w[i] * gen.vec(corral[i]);
  return x;
}

// One run of minor cycles: moves the corral weights toward the affine
// minimizer, dropping generators whose weight reaches zero.
void minor_cycles(const Generators& gen, std::vector<int>& corral, std::vector<double>& w) {
  for (std::size_t guard = 0; guard <= 4 * corral.size() + 4; ++guard) {
    const std::vector<double> z = affine_minimizer(gen, corral);
    bool positive = true;
    for (double zi : z) positive = positive && zi > kWeightEps;
    if (positive) {
      w = z;
      return;
    }
    double theta = 1.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (z[i] <= kWeightEps && w[i] - z[i] > 0.0) theta = std::min(theta, w[i] / (w[i] - z[i]));
    }
    std::vector<int> next_corral;
    std::vector<double> next_w;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double wi = w[i] + theta * (z[i] - w[i]);
      if (wi > kWeightEps) {
        next_corral.push_back(corral[i]);
        next_w.push_back(wi);
      }
    }
    if (next_corral.empty()) return;
    corral = std::move(next_corral);
    w = std::move(next_w);
    // Keep the point weights on the simplex despite roundoff.
    double sum = 0.0;
    for (std::size_t i = 0; i < corral.size(); ++i) {
      if (gen.is_point(corral[i])) sum += w[i];
    }
    if (sum <= 0.0) return;
    for (std::size_t i = 0; i < corral.size(); ++i) {
      if (gen.is_point(corral[i])) w[i] /= sum;
    }
  }
}

}  // namespace

MinNormResult min_norm_point(const Vec& target, const std::vector<Vec>& atoms,
                             bool recession_nonneg, const std::vector<double>* warm_start) {
  if (atoms.empty()) throw InvalidArgument("min_norm_point needs at least one atom");
  const Eigen::Index n = target.size();
  for (const Vec& a : atoms) {
    if (a.size() != n) throw DimensionError("atom dimension differs from target");
  }
  const Generators gen(target, atoms, recession_nonneg);
  const int m = static_cast<int>(atoms.size());

  double scale = 1.0;
  for (const Vec& a : atoms) scale = std::max(scale, (a - target).squaredNorm());
  const double tol = 1e-14 * scale;

  std::vector<int> corral;
  std::vector<double> w;
  if (warm_start != nullptr && static_cast<int>(warm_start->size()) == m) {
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      if ((*warm_start)[i] > kWeightEps) {
        corral.push_back(i);
        w.push_back((*warm_start)[i]);
        sum += (*warm_start)[i];
      }
    }
    for (double& wi : w) wi /= sum;
    if (corral.size() > static_cast<std::size_t>(n + 1)) {
      // Too many to be affinely independent; start cold.
      corral.clear();
      w.clear();
    } else if (!corral.empty()) {
      minor_cycles(gen, corral, w);
    }
  }
  if (corral.empty()) {
    int best = 0;
    double best_norm = kInf;
    for (int i = 0; i < m; ++i) {
      const double d = (atoms[i] - target).squaredNorm();
      if (d < best_norm) {
        best_norm = d;
        best = i;
      }
    }
    corral = {best};
    w = {1.0};
  }

  MinNormResult out;
  const int limit = 50 * gen.count();
  Vec x = corral_point(gen, corral, w, n);
  out.converged = false;
  for (int cycle = 0; cycle < limit; ++cycle) {
    out.major_cycles = cycle + 1;
    const double xx = x.squaredNorm();
    int enter = -1;
    double best_score = 0.0;
    for (int g = 0; g < gen.count(); ++g) {
      const double score = gen.is_point(g) ? gen.dot(x, g) - xx : gen.dot(x, g);
      if (score < best_score) {
        best_score = score;
        enter = g;
      }
    }
    if (enter < 0 || best_score >= -tol) {
      out.converged = true;
      break;
    }
    if (std::find(corral.begin(), corral.end(), enter) != corral.end()) {
      // Roundoff: the affine minimizer is already as good as it gets.
      out.converged = true;
      break;
    }
    corral.push_back(enter);
    w.push_back(0.0);
    minor_cycles(gen, corral, w);
    x = corral_point(gen, corral, w, n);
    if (x.squaredNorm() >= xx - 1e-20 * scale) {
      // No measurable progress: roundoff floor reached.
      out.converged = true;
      break;
    }
  }

  out.weights.assign(m, 0.0);
  out.slack = Vec::Zero(n);
  for (std::size_t i = 0; i < corral.size(); ++i) {
    if (gen.is_point(corral[i])) {
      out.weights[corral[i]] = w[i];
    } else {
      out.slack(corral[i] - m) = w[i];
    }
  }
  out.q = target + x;
  return out;
}

Combination fully_corrective_update(const std::vector<Vec>& atoms,
                                    const std::vector<double>& weights, const Vec& f_next,
                                    bool nonneg) {
  MinNormResult r = min_norm_point(f_next, atoms, nonneg, &weights);
  return {std::move(r.q), std::move(r.weights), std::move(r.slack)};
}

Combination partially_corrective_update(const std::vector<Vec>& atoms,
                                        const std::vector<double>& weights, int new_atom,
                                        const Vec& f_next, int cap, bool nonneg) {
  if (cap < 2) throw InvalidArgument("support cap must be at least 2");
  std::vector<int> support;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0 && static_cast<int>(i) != new_atom) support.push_back(static_cast<int>(i));
  }
  std::stable_sort(support.begin(), support.end(),
                   [&](int a, int b) { return weights[a] > weights[b]; });
  const std::size_t keep = static_cast<std::size_t>(new_atom >= 0 ? cap - 1 : cap);
  if (support.size() > keep) support.resize(keep);
  if (new_atom >= 0) support.push_back(new_atom);
  std::sort(support.begin(), support.end());

  std::vector<Vec> subset;
  std::vector<double> sub_weights;
  for (int i : support) {
    subset.push_back(atoms[i]);
    sub_weights.push_back(weights[i]);
  }
  const MinNormResult r = min_norm_point(f_next, subset, nonneg, &sub_weights);
  Combination out;
  out.point = r.q;
  out.slack = r.slack;
  out.weights.assign(atoms.size(), 0.0);
  for (std::size_t k = 0; k < support.size(); ++k) out.weights[support[k]] = r.weights[k];
  return out;
}

SparsifyResult sparsify(const Vec& q, const Vec& f, const std::vector<Vec>& atoms,
                        const std::vector<double>& weights) {
  const Eigen::Index n = q.size();
  const Eigen::Index m = static_cast<Eigen::Index>(atoms.size());
  // Variables: mu (m entries) then lambda.
  auto build = [&](const Vec& base) {
    Vec obj = Vec::Zero(m + 1);
    obj(m) = 1.0;
    LinearProgram lp = LinearProgram::nonnegative(std::move(obj));
    lp.upper(m) = 1.0;
    const Vec dir = f - base;
    for (Eigen::Index i = 0; i < n; ++i) {
      Vec row(m + 1);
      for (Eigen::Index j = 0; j < m; ++j) row(j) = atoms[j](i);
      row(m) = -dir(i);
      lp.equalities.push_back({std::move(row), base(i), ConstraintForm::General});
    }
    Vec ones = Vec::Ones(m + 1);
    ones(m) = 0.0;
    lp.equalities.push_back({std::move(ones), 1.0, ConstraintForm::General});
    return lp;
  };

  auto solve_from = [&](const Vec& base) {
    const LpSolution sol = solve_lp(build(base));
    SparsifyResult out;
    out.step = sol.x(m);
    out.q = (1.0 - out.step) * base + out.step * f;
    out.weights.resize(m);
    for (Eigen::Index j = 0; j < m; ++j) out.weights[j] = std::max(0.0, sol.x(j));
    return out;
  };

  try {
    return solve_from(q);
  } catch (const LpInfeasible&) {
    std::vector<double> w = weights;
    double sum = 0.0;
    for (double& wi : w) {
      wi = std::max(0.0, wi);
      sum += wi;
    }
    if (sum <= 0.0) throw;
    for (double& wi : w) wi /= sum;
    return solve_from(combine(atoms, w));
  }
}

OrthantSegmentPoint nonneg_corrective_update(const Vec& f_next, const Vec& q_t, const Vec& v) {
  return min_piecewise_quadratic_on_segment(f_next, q_t, v);
}

}  // namespace oracleopt
