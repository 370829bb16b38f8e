#include <doctest.h>

#include <cmath>
#include <random>

#include "oracleopt/error.hpp"
#include "oracleopt/geometry.hpp"

using namespace oracleopt;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec random_vec(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

double grid_min_segment(const Vec& x, const Vec& y, const Vec& z, double* best_lambda) {
  double best = INFINITY;
  for (int k = 0; k <= 1000000; ++k) {
    const double l = k * 1e-6;
    const double d = (x + l * (y - x) - z).norm();
    if (d < best) {
      best = d;
      if (best_lambda) *best_lambda = l;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("segment projection examples") {
  SegmentPoint p = project_point_to_segment(v2(0, 0), v2(2, 0), v2(1, 1));
  CHECK(p.point.isApprox(v2(1, 0)));
  CHECK(p.coeff == doctest::Approx(0.5));

  p = project_point_to_segment(v2(3, 4), v2(3, 4), v2(0, 0));
  CHECK(p.point == v2(3, 4));
  CHECK(p.coeff == 0.0);

  p = project_point_to_segment(v2(1, 0), v2(0, 1), v2(0, 0));
  CHECK(p.point.isApprox(v2(0.5, 0.5)));
  CHECK(p.coeff == doctest::Approx(0.5));

  CHECK_THROWS_AS(project_point_to_segment(v2(0, 0), Vec::Zero(3), v2(0, 0)), DimensionError);
}

TEST_CASE("segment projection is idempotent and never worse than an endpoint") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec x = random_vec(rng, 4), y = random_vec(rng, 4), z = random_vec(rng, 4);
    const SegmentPoint p = project_point_to_segment(x, y, z);
    const double d = (p.point - z).norm();
    CHECK(d <= (x - z).norm() + 1e-12);
    CHECK(d <= (y - z).norm() + 1e-12);
    const SegmentPoint again = project_point_to_segment(x, y, p.point);
    CHECK((again.point - p.point).norm() < 1e-9);
  }
}

TEST_CASE("segment projection matches a grid search") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const Vec x = random_vec(rng, 3), y = random_vec(rng, 3), z = random_vec(rng, 3);
    const double grid = grid_min_segment(x, y, z, nullptr);
    const SegmentPoint p = project_point_to_segment(x, y, z);
    CHECK((p.point - z).norm() <= grid + 1e-12);
    CHECK((p.point - z).norm() >= grid - 1e-6);
  }
}

TEST_CASE("projection contraction bound for an acute corner") {
  // If <x - y, x - z> >= eps |x - z|^2 with all points in the rho-ball, the
  // projection of z onto [x, y] is within (1 - eps^2 |x-z|^2 / (4 rho^2)) |x-z|^2.
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const double rho = 2.0;
    Vec x = random_vec(rng, 3), y = random_vec(rng, 3), z = random_vec(rng, 3);
    for (Vec* v : {&x, &y, &z}) {
      if (v->norm() > rho) *v *= rho / v->norm();
    }
    const double dxz = (x - z).squaredNorm();
    if (dxz < 1e-12) continue;
    const double eps = (x - y).dot(x - z) / dxz;
    if (eps <= 0.0) continue;
    ++checked;
    const SegmentPoint p = project_point_to_segment(x, y, z);
    const double lhs = (p.point - z).squaredNorm();
    CHECK(lhs <= (1.0 - eps * eps * dxz / (4 * rho * rho)) * dxz + 1e-12);
  }
  CHECK(checked > 1000);
}

TEST_CASE("recursive decrease implies harmonic growth") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double eta = 0.01 + 0.5 * u(rng);
    double d = std::min(0.99 / eta, 1.0 + u(rng));
    const double d1 = d;
    for (int t = 2; t <= 200; ++t) {
      d = d * (1.0 - eta * d) * (0.5 + 0.5 * u(rng));
      if (d <= 0.0) break;
      CHECK(1.0 / d >= 1.0 / d1 + (t - 1) * eta - 1e-9);
    }
  }
}

TEST_CASE("lifted norm and inner product") {
  for (double r : {0.5, 1.0, 3.0}) {
    CHECK(rnorm(LiftedVec(Vec::Zero(2), r, r)) == doctest::Approx(1.0));
    CHECK(rnorm(LiftedVec(v2(1, 0), r, r)) == doctest::Approx(std::sqrt(2.0)));
  }
  CHECK(rinner(LiftedVec(v2(1, 0), 0, 2), LiftedVec(v2(1, 0), 0, 2)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(rinner(LiftedVec(v2(1, 0), 0, 2), LiftedVec(v2(1, 0), 0, 3)), InvalidArgument);

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const double r = 0.1 + std::abs(random_vec(rng, 1)(0));
    const LiftedVec u(random_vec(rng, 3), random_vec(rng, 1)(0), r);
    const LiftedVec w(random_vec(rng, 3), random_vec(rng, 1)(0), r);
    CHECK(rnorm(u) == doctest::Approx(phi(u).norm()).epsilon(1e-12));
    const LiftedVec back = phi_inverse(phi(u), r);
    CHECK((back.head - u.head).norm() < 1e-12);
    CHECK(back.tail == doctest::Approx(u.tail));
    // <f, g>_R <= |f|_R |g| with the plain norm on the right.
    Vec g(4);
    g << w.head, w.tail;
    CHECK(rinner(u, w) <= rnorm(u) * g.norm() + 1e-12);
  }
}

TEST_CASE("minimum lifted norm on a segment") {
  for (double r : {0.5, 1.0, 2.0}) {
    const LiftedSegmentPoint p = min_rnorm_on_segment(LiftedVec(v2(1, 0), 0, r), LiftedVec(v2(-1, 0), 0, r));
    CHECK(p.point.head.norm() < 1e-12);
    CHECK(p.coeff == doctest::Approx(0.5));
  }
  const LiftedVec u(v2(1, 2), 3, 2);
  const LiftedSegmentPoint same = min_rnorm_on_segment(u, u);
  CHECK(same.coeff == 0.0);
  CHECK(same.point.head == u.head);

  // u = (e1, R), v = (0, R), R = 2 against a grid over the coefficient.
  const LiftedVec a(v2(1, 0), 2, 2), b(v2(0, 0), 2, 2);
  double best = INFINITY, best_l = 0.0;
  for (int k = 0; k <= 1000000; ++k) {
    const double l = k * 1e-6;
    const double val = rnorm(a + l * (b - a));
    if (val < best) {
      best = val;
      best_l = l;
    }
  }
  const LiftedSegmentPoint p = min_rnorm_on_segment(a, b);
  CHECK(rnorm(p.point) <= best + 1e-12);
  CHECK(p.coeff == doctest::Approx(best_l).epsilon(1e-5));
  CHECK(rnorm(p.point) == doctest::Approx(project_point_to_segment(phi(a), phi(b), Vec::Zero(3)).point.norm()).epsilon(1e-12));
}

TEST_CASE("distance to a shifted orthant") {
  OrthantDistance d = dist_to_shifted_orthant(v2(1, 1), v2(2, 2));
  CHECK(d.dist == 0.0);
  CHECK(d.witness == v2(1, 1));
  d = dist_to_shifted_orthant(v2(1, 1), v2(0, 3));
  CHECK(d.dist == doctest::Approx(1.0));
  CHECK(d.witness == v2(0, 1));
  Vec f(3), q(3), w(3);
  f << 2, 0, 1;
  q << 1, 1, 1;
  w << 1, 0, 1;
  d = dist_to_shifted_orthant(f, q);
  CHECK(d.dist == doctest::Approx(1.0));
  CHECK(d.witness == w);
}

TEST_CASE("piecewise quadratic segment minimization") {
  OrthantSegmentPoint p = min_piecewise_quadratic_on_segment(v2(1, 1), v2(1, 1), v2(5, 5));
  CHECK(p.coeff == 0.0);
  CHECK(p.dist == 0.0);
  CHECK(p.q == v2(1, 1));
  p = min_piecewise_quadratic_on_segment(v2(0, 0), v2(1, 0), v2(0, 1));
  CHECK(p.coeff == 0.0);
  CHECK(p.dist == 0.0);

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 4; ++trial) {
    const Vec f = random_vec(rng, 5), u = random_vec(rng, 5), v = random_vec(rng, 5);
    double best = INFINITY;
    for (int k = 0; k <= 1000000; ++k) {
      const double l = k * 1e-6;
      best = std::min(best, dist_to_shifted_orthant(f, u + l * (v - u)).dist);
    }
    const OrthantSegmentPoint got = min_piecewise_quadratic_on_segment(f, u, v);
    CHECK(got.dist <= best + 1e-12);
    CHECK(got.dist >= best - 1e-6);
    CHECK(got.dist == doctest::Approx(dist_to_shifted_orthant(f, got.q).dist).epsilon(1e-12));
  }
}
