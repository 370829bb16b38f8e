#include <doctest.h>

#include <cmath>
#include <random>

#include "oracleopt/error.hpp"
#include "oracleopt/solver_polar.hpp"

using namespace oracleopt;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec unit(int n, int i) {
  Vec v = Vec::Zero(n);
  v(i) = 1.0;
  return v;
}

Vec random_vec(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

PolarState bare_state(const Vec& f, const Vec& q) {
  PolarState s;
  s.gamma = 1.0;
  s.c = f;
  s.f = f;
  s.q = q;
  s.shadow = q;
  return s;
}

// Ball with the origin in its interior: center of norm < radius.
BallOracle random_ball(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  const double radius = u(rng);
  Vec center = random_vec(rng, n);
  center *= (0.5 * radius) * std::uniform_real_distribution<double>(0.0, 1.0)(rng) / center.norm();
  return BallOracle(center, radius);
}

}  // namespace

TEST_CASE("gamma initialization") {
  const BallOracle ball(Vec::Zero(2), 1.0);
  GammaInit g = initialize_gamma(ball, unit(2, 0), 1.0, std::nullopt);
  CHECK(g.gamma == doctest::Approx(0.5));
  CHECK(g.oracle_calls == 1);
  g = initialize_gamma(ball, unit(2, 0), 1.0, 1.0);
  CHECK(g.gamma == doctest::Approx(0.5));
  CHECK(g.oracle_calls == 0);

  const PolytopeOracle cube = make_cube_oracle(2);
  g = initialize_gamma(cube, v2(1, 1), std::sqrt(2.0), std::nullopt);
  CHECK(g.gamma == doctest::Approx(1.0));
  CHECK((g.point - v2(0.5, 0.5)).norm() < 1e-12);

  // A far-away outer radius costs a few halvings.
  g = initialize_gamma(ball, unit(2, 0), 16.0, std::nullopt);
  CHECK(g.oracle_calls == 4);
  CHECK(g.gamma == doctest::Approx(1.0));

  CHECK_THROWS_AS(initialize_gamma(ball, Vec::Zero(2), 1.0, std::nullopt), InvalidArgument);

  // Empty-looking set: a ball that misses every point along c.
  const BallOracle away(v2(0, 5), 0.5);
  CHECK_THROWS_AS(initialize_gamma(away, unit(2, 0), 6.0, std::nullopt), Error);
}

TEST_CASE("candidate point") {
  std::optional<Vec> x = candidate_point(bare_state(v2(2, 0), v2(0, 0)));
  REQUIRE(x);
  CHECK((*x - v2(1, 0)).norm() < 1e-15);

  CHECK_FALSE(candidate_point(bare_state(v2(1, 0), v2(2, 0))));

  x = candidate_point(bare_state(v2(2, 0), v2(0, 1)));
  REQUIRE(x);
  CHECK((*x - v2(4.0 / 3.0, -2.0 / 3.0)).norm() < 1e-15);
}

TEST_CASE("two hand simulated steps on the unit disc") {
  const BallOracle ball(Vec::Zero(2), 1.0);
  PolarState s = PolarState::initial(unit(2, 0), 0.5, PolarMode::Standard);
  CHECK(s.f == v2(2, 0));

  StepKind k = polar_step(s, ball, UpdateStrategy::segment_only());
  CHECK(k == StepKind::PrimalImprove);
  CHECK(s.gamma == doctest::Approx(1.0));
  CHECK((s.f - v2(1, 0)).norm() < 1e-15);
  CHECK(s.q.norm() == 0.0);

  k = polar_step(s, ball, UpdateStrategy::segment_only());
  CHECK(k == StepKind::DualCut);
  REQUIRE(s.atoms.size() == 2);
  CHECK((s.atoms[1] - v2(1, 0)).norm() < 1e-12);
  CHECK(s.gamma == doctest::Approx(1.0));
  CHECK(s.residual() < 1e-12);
  CHECK(dual_bound(s, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("shrink step keeps gamma") {
  const BallOracle ball(Vec::Zero(2), 1.0);
  // The row 2 x_1 <= 1 gives the atom (2, 0).
  PolarState s =
      PolarState::initial(unit(2, 0), 1.0, PolarMode::Standard, {{v2(2, 0), 1.0}});
  s.mu = {0.0, 1.0};
  s.q = v2(2, 0);
  s.shadow = s.q;
  const StepKind k = polar_step(s, ball, UpdateStrategy::segment_only());
  CHECK(k == StepKind::Shrink);
  CHECK(s.gamma == 1.0);
  CHECK((s.q - v2(1, 0)).norm() < 1e-12);
  CHECK(s.mu[0] == doctest::Approx(0.5));
  CHECK(s.oracle_calls == 0);
}

TEST_CASE("dual bound formula") {
  PolarState s = bare_state(v2(1, 0), v2(0.9, 0));
  CHECK(dual_bound(s, 2.0) == doctest::Approx(1.2));
  s.q = s.f;
  CHECK(dual_bound(s, 2.0) == 1.0);
}

TEST_CASE("disc run reaches one percent with a valid certificate") {
  const BallOracle ball(Vec::Zero(2), 1.0);
  PolarOptions opt;
  opt.gamma1 = 0.5;
  opt.stop = StopRule::relative(0.01);
  const PolarResult r = run_polar(ball, unit(2, 0), opt);
  CHECK(r.converged);
  CHECK(r.gamma >= 0.99);
  CHECK(r.certificate.claimed_bound <= 1.01 * r.gamma + 1e-12);
  CHECK(r.certificate.claimed_bound >= 1.0 - 1e-12);
  CHECK(verify_certificate(r.certificate, r.history, unit(2, 0)).passed());
  REQUIRE(r.incumbent);
  CHECK(ball.contains(*r.incumbent));
}

TEST_CASE("packing box converges to two") {
  BoxBounds box{Vec::Zero(2), Vec::Ones(2)};
  const PolytopeOracle k({}, box, std::sqrt(2.0), 1.0);
  PolarOptions opt;
  opt.mode = PolarMode::Packing;
  opt.stop = StopRule::relative(0.01, 5000);
  const PolarResult r = run_polar(k, v2(1, 1), opt);
  CHECK(r.converged);
  CHECK(r.gamma >= 2.0 / 1.01 - 1e-12);
  CHECK(r.gamma <= 2.0 + 1e-6);
  CHECK(r.state.min_query_coord >= 0.0);
  CHECK(verify_certificate(r.certificate, r.history, v2(1, 1)).passed());
  CHECK(r.certificate.claimed_bound >= 2.0 - 1e-9);
}

TEST_CASE("objective checks at entry") {
  const BallOracle ball(Vec::Zero(2), 1.0);
  CHECK_THROWS_AS(run_polar(ball, Vec::Zero(2), {}), InvalidArgument);
  CHECK_THROWS_AS(run_polar(ball, Vec::Ones(3), {}), DimensionError);
  PolarOptions opt;
  opt.mode = PolarMode::Packing;
  CHECK_THROWS_AS(run_polar(ball, v2(1, -1), opt), InvalidArgument);
}

TEST_CASE("per iteration invariants on random balls") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 4;
    const BallOracle ball = random_ball(rng, n);
    const Vec c = random_vec(rng, n);
    const double r = *ball.inner_radius();
    const double big_r = ball.outer_radius();
    const double gamma1 = 0.5 * r * c.norm();
    const double rho = std::max(1.0 / r, c.norm() / gamma1);
    const double opt_value = c.dot(ball.center()) + ball.radius() * c.norm();

    UpdateStrategy strategy = UpdateStrategy::segment_only();
    if (trial % 3 == 1) strategy = UpdateStrategy::fully_corrective(1 + trial % 2 * 9);
    if (trial % 3 == 2) strategy = UpdateStrategy::partially_corrective();

    PolarState s = PolarState::initial(c, gamma1, PolarMode::Standard);
    for (int t = 1; t <= 400; ++t) {
      const double d = s.residual();
      const double gamma = s.gamma;
      CHECK(d <= 4.0 * rho / std::sqrt(static_cast<double>(t)) + 1e-12);
      CHECK(gamma <= opt_value + 1e-6);
      CHECK(opt_value <= (1.0 + 8.0 * big_r / (r * std::sqrt(static_cast<double>(t)))) * gamma + 1e-9);
      CHECK(dual_bound(s, big_r) >= opt_value - 1e-9);
      polar_step(s, ball, strategy);
      CHECK(s.gamma >= gamma);
      CHECK(s.residual() <= d + 1e-12);
      CHECK(s.residual() * s.residual() <= (1.0 - d * d / (16.0 * rho * rho)) * d * d + 1e-12);
      CHECK((combine(s.atoms, s.mu) - s.q).norm() < 1e-8);
      if (s.incumbent) CHECK(ball.contains(*s.incumbent));
    }
  }
}

TEST_CASE("packing invariants") {
  // Down-closed simplex-like polytope x_1 + 2 x_2 <= 2, x <= 1.5, x >= 0.
  std::vector<Constraint> rows{{v2(1, 2), 2.0}};
  BoxBounds box{Vec::Zero(2), Vec::Constant(2, 1.5)};
  const PolytopeOracle k(rows, box, 2.0, 0.8);
  for (const UpdateStrategy& strategy :
       {UpdateStrategy::segment_only(), UpdateStrategy::nonneg(), UpdateStrategy::fully_corrective(1)}) {
    PolarState s = PolarState::initial(v2(1, 1), 0.4 * std::sqrt(2.0), PolarMode::Packing);
    for (int t = 0; t < 300; ++t) {
      const double d = s.residual();
      polar_step(s, k, strategy);
      CHECK(s.residual() <= d + 1e-12);
      CHECK((s.q.array() <= s.shadow.array() + 1e-12).all());
      CHECK((s.q.array() <= s.f.array() + 1e-12).all());
      CHECK((combine(s.atoms, s.mu) - s.shadow).norm() < 1e-8);
    }
    CHECK(s.min_query_coord >= 0.0);
    // OPT = 1.5 + 0.25 at (1.5, 0.25).
    CHECK(s.gamma <= 1.75 + 1e-6);
    CHECK(s.gamma >= 1.7);
    const DualCertificate cert = build_polar_certificate(s, 2.0);
    CHECK(verify_certificate(cert, s.rows, v2(1, 1)).passed());
    CHECK(cert.claimed_bound >= 1.75 - 1e-9);
  }
}

TEST_CASE("trace rows and iteration cap") {
  const PolytopeOracle cube = make_cube_oracle(3);
  PolarOptions opt;
  opt.stop = StopRule::iterations(25);
  const PolarResult r = run_polar(cube, Vec::Ones(3), opt);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 25);
  REQUIRE(r.trace.rows.size() == 26);
  CHECK(r.trace.rows.front().kind == StepKind::Init);
  for (std::size_t i = 1; i < r.trace.rows.size(); ++i) {
    CHECK(r.trace.rows[i].t == r.trace.rows[i - 1].t + 1);
    CHECK(*r.trace.rows[i].gamma >= *r.trace.rows[i - 1].gamma);
    CHECK(r.trace.rows[i].oracle_calls >= r.trace.rows[i - 1].oracle_calls);
  }
  CHECK(r.dual_bound >= 3.0 - 1e-9);
}

TEST_CASE("lp stop rule on the cube") {
  const PolytopeOracle cube = make_cube_oracle(2);
  LpStopRule lp;
  lp.base = LinearProgram::nonnegative(v2(1, 1));
  lp.base.lower = Vec::Constant(2, -2.0);
  lp.base.upper = Vec::Constant(2, 2.0);
  lp.reference_opt = 2.0;
  lp.factor = 1.01;
  PolarOptions opt;
  opt.stop.lp = lp;
  const PolarResult r = run_polar(cube, v2(1, 1), opt);
  CHECK(r.converged);
  REQUIRE(r.final_lp_bound);
  CHECK(*r.final_lp_bound <= 2.02 + 1e-9);
}
