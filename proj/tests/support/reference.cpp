#include "reference.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace ref {

namespace {

void choose(int n, int k, int start, std::vector<int>& cur,
            const std::function<void(const std::vector<int>&)>& f) {
  if (static_cast<int>(cur.size()) == k) {
    f(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, f);
    cur.pop_back();
  }
}

}  // namespace

double vertex_enumeration_max(const Vec& c, const std::vector<Constraint>& rows) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(rows.size());
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> cur;
  choose(m, n, 0, cur, [&](const std::vector<int>& idx) {
    Eigen::MatrixXd a(n, n);
    Vec b(n);
    for (int i = 0; i < n; ++i) {
      a.row(i) = rows[idx[i]].a.transpose();
      b(i) = rows[idx[i]].b;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.rank() < n) return;
    const Vec x = lu.solve(b);
    for (const Constraint& r : rows) {
      if (r.a.dot(x) > r.b + 1e-9 * (1.0 + std::abs(r.b))) return;
    }
    best = std::max(best, c.dot(x));
  });
  return best;
}

std::vector<Constraint> as_rows(const oracleopt::LinearProgram& lp) {
  std::vector<Constraint> rows = lp.rows;
  const Eigen::Index n = lp.num_vars();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::isfinite(lp.lower(j))) {
      Vec a = Vec::Zero(n);
      a(j) = -1.0;
      rows.push_back({a, -lp.lower(j)});
    }
    if (std::isfinite(lp.upper(j))) {
      Vec a = Vec::Zero(n);
      a(j) = 1.0;
      rows.push_back({a, lp.upper(j)});
    }
  }
  return rows;
}

Vec project_to_simplex(const Vec& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

Vec projected_gradient_min_norm(const Vec& target, const std::vector<Vec>& atoms, int steps) {
  const int k = static_cast<int>(atoms.size());
  Eigen::MatrixXd a(target.size(), k);
  for (int i = 0; i < k; ++i) a.col(i) = atoms[i];
  const Eigen::MatrixXd h = a.transpose() * a;
  const double lip = std::max(1e-12, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h).eigenvalues().maxCoeff());
  Vec w = Vec::Constant(k, 1.0 / k);
  Vec y = w;
  double tk = 1.0;
  auto value = [&](const Vec& z) { return (a * z - target).squaredNorm(); };
  for (int s = 0; s < steps; ++s) {
    const Vec grad = h * y - a.transpose() * target;
    const Vec next = project_to_simplex(y - grad / lip);
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
    if (value(next) > value(w)) {
      // Adaptive restart.
      y = w;
      tk = 1.0;
      continue;
    }
    y = next + ((tk - 1.0) / tn) * (next - w);
    w = next;
    tk = tn;
  }
  return a * w;
}

Violation exhaustive_oddset(const Graph& g, const Vec& x) {
  const int n = g.num_nodes;
  Violation out;
  bool any = false;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size < 3 || size % 2 == 0) continue;
    double inner = 0.0;
    for (int e = 0; e < g.num_edges(); ++e) {
      if ((mask >> g.edges[e].first & 1u) && (mask >> g.edges[e].second & 1u)) inner += x(e);
    }
    const double v = inner - (size - 1) / 2.0;
    if (!any || v > out.value) out.value = v;
    any = true;
  }
  out.violated = any && out.value > oracleopt::kViolationTol;
  return out;
}

Violation exhaustive_clique(const Graph& g, const Vec& x) {
  const int n = g.num_nodes;
  std::vector<std::uint32_t> nbr(n, 0);
  for (auto [u, v] : g.edges) {
    nbr[u] |= 1u << v;
    nbr[v] |= 1u << u;
  }
  Violation out;
  bool any = false;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool clique = true;
    double w = 0.0;
    for (int v = 0; v < n && clique; ++v) {
      if (!(mask >> v & 1u)) continue;
      if ((mask & ~(1u << v) & ~nbr[v]) != 0) clique = false;
      w += x(v);
    }
    if (!clique) continue;
    if (!any || w - 1.0 > out.value) out.value = w - 1.0;
    any = true;
  }
  out.violated = any && out.value > oracleopt::kViolationTol;
  return out;
}

std::vector<Vec> all_matchings(const Graph& g) {
  std::vector<Vec> out;
  Vec cur = Vec::Zero(g.num_edges());
  std::vector<char> used(g.num_nodes, 0);
  std::function<void(int)> rec = [&](int e) {
    if (e == g.num_edges()) {
      out.push_back(cur);
      return;
    }
    rec(e + 1);
    const auto [u, v] = g.edges[e];
    if (!used[u] && !used[v]) {
      used[u] = used[v] = 1;
      cur(e) = 1.0;
      rec(e + 1);
      cur(e) = 0.0;
      used[u] = used[v] = 0;
    }
  };
  rec(0);
  return out;
}

std::vector<Vec> all_stable_sets(const Graph& g) {
  const int n = g.num_nodes;
  std::vector<Vec> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (auto [u, v] : g.edges) {
      if ((mask >> u & 1u) && (mask >> v & 1u)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Vec x = Vec::Zero(n);
    for (int v = 0; v < n; ++v) x(v) = (mask >> v) & 1u;
    out.push_back(x);
  }
  return out;
}

Vec random_degree_feasible(const Graph& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vec x(g.num_edges());
  for (int e = 0; e < x.size(); ++e) {
    const double r = unit(rng);
    x(e) = r < 0.3 ? 0.0 : (r < 0.6 ? 0.5 : unit(rng));
  }
  std::vector<double> load(g.num_nodes, 0.0);
  for (int e = 0; e < x.size(); ++e) {
    load[g.edges[e].first] += x(e);
    load[g.edges[e].second] += x(e);
  }
  for (int e = 0; e < x.size(); ++e) {
    const double worst = std::max({1.0, load[g.edges[e].first], load[g.edges[e].second]});
    x(e) /= worst;
  }
  return x;
}

}  // namespace ref
