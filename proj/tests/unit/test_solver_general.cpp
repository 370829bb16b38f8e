#include <doctest.h>

#include <cmath>
#include <random>

#include "oracleopt/error.hpp"
#include "oracleopt/solver_general.hpp"

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

}  // namespace

TEST_CASE("candidate extraction") {
  Candidate k = extract_candidate(LiftedVec(Vec::Zero(2), 3.0, 1.0), 3.0);
  CHECK(k.alpha == 1.0);
  REQUIRE(k.x);
  CHECK(k.x->norm() == 0.0);

  k = extract_candidate(LiftedVec(-2.0 * unit(2, 0), 6.0, 1.0), 3.0);
  CHECK(k.alpha == 2.0);
  REQUIRE(k.x);
  CHECK((*k.x - unit(2, 0)).norm() < 1e-15);

  k = extract_candidate(LiftedVec(unit(2, 0), -3.0, 1.0), 3.0);
  CHECK(k.alpha == -1.0);
  CHECK_FALSE(k.x);
}

TEST_CASE("first step against an off-center disc is a cut") {
  const BallOracle ball(0.5 * unit(2, 0), 0.25);
  GeneralState s = GeneralState::initial(unit(2, 0), ball.outer_radius());
  CHECK(s.gamma == -1.0);
  CHECK(s.reported_gamma() == doctest::Approx(-0.75));
  const StepKind k = general_step(s, ball);
  CHECK(k == StepKind::DualCut);
  REQUIRE(s.rows.size() == 2);
  CHECK((s.rows[1].a - v2(-1, 0)).norm() < 1e-12);
  CHECK(s.rows[1].b == doctest::Approx(-0.25));
  // Scaled atom (-e1, -1/3); p is the min-norm point of [(0, 1), atom].
  const LiftedVec atom(v2(-1, 0), -1.0 / 3.0, 1.0);
  const LiftedSegmentPoint expect = min_rnorm_on_segment(LiftedVec(Vec::Zero(2), 1.0, 1.0), atom);
  CHECK((s.p.head - expect.point.head).norm() < 1e-12);
  CHECK(s.p.tail == doctest::Approx(expect.point.tail));
  CHECK(s.lambda == 0.0);
  CHECK(s.oracle_calls == 1);
}

TEST_CASE("negative alpha shrinks toward the ball row") {
  const BallOracle ball(Vec::Zero(2), 1.0);
  GeneralState s = GeneralState::initial(unit(2, 0), 1.0);
  s.p = LiftedVec(unit(2, 0), -1.0, 1.0);
  s.q = s.p;
  const StepKind k = general_step(s, ball);
  CHECK(k == StepKind::ShrinkToBall);
  CHECK((s.p.head - v2(0.4, 0)).norm() < 1e-12);
  CHECK(s.p.tail == doctest::Approx(0.2));
  CHECK(s.oracle_calls == 0);
}

TEST_CASE("first improvement from lambda zero has beta one") {
  const BallOracle ball(Vec::Zero(2), 1.0);
  GeneralState s = GeneralState::initial(unit(2, 0), 1.0);
  const StepKind k = general_step(s, ball);
  CHECK(k == StepKind::PrimalImprove);
  CHECK(s.min_beta == 1.0);
  CHECK(s.gamma == 0.0);
  CHECK(s.max_orthogonality_error < 1e-12);
  REQUIRE(s.incumbent);
  CHECK(s.incumbent->norm() == 0.0);
}

TEST_CASE("dual bound formula") {
  GeneralState s = GeneralState::initial(unit(2, 0), 1.0);
  CHECK_FALSE(general_dual_bound(s));
  s.gamma = 3.0;
  s.lambda = 1.0;
  s.p = LiftedVec(v2(0.06, 0), 0.08, 1.0);
  REQUIRE(general_dual_bound(s));
  CHECK(*general_dual_bound(s) == doctest::Approx(3.2));
}

TEST_CASE("translated disc converges to its optimum") {
  const BallOracle ball(0.3 * unit(2, 0), 0.5);
  GeneralOptions opt;
  opt.stop = StopRule::relative(0.01, 100000);
  const GeneralResult r = run_general(ball, unit(2, 0), opt);
  CHECK(r.converged);
  CHECK(r.gamma <= 0.8 + 1e-6);
  CHECK(r.gamma >= 0.8 / 1.01 - 1e-9);
  REQUIRE(r.dual_bound);
  CHECK(*r.dual_bound >= 0.8 - 1e-9);
  CHECK(*r.dual_bound - r.gamma <= 0.01 * r.gamma + 1e-12);
  REQUIRE(r.certificate);
  CHECK(verify_certificate(*r.certificate, r.history, unit(2, 0)).passed());
  REQUIRE(r.incumbent);
  CHECK(ball.contains(*r.incumbent));
}

TEST_CASE("simplex with a loose outer radius") {
  std::vector<Constraint> rows{{Vec::Ones(3), 1.0}};
  BoxBounds box{Vec::Zero(3), Vec::Ones(3)};
  const PolytopeOracle k(rows, box, 1.1);
  GeneralOptions opt;
  opt.stop = StopRule::iterations(100000);
  const GeneralResult r = run_general(k, unit(3, 0), opt);
  CHECK(r.gamma <= 1.0 + 1e-6);
  CHECK(r.gamma >= 0.99);
  REQUIRE(r.dual_bound);
  CHECK(*r.dual_bound >= 1.0 - 1e-9);
  REQUIRE(r.certificate);
  CHECK(verify_certificate(*r.certificate, r.history, unit(3, 0)).passed());
}

TEST_CASE("objective checks") {
  const BallOracle ball(Vec::Zero(2), 1.0);
  CHECK_THROWS_AS(run_general(ball, Vec::Zero(2), {}), InvalidArgument);
  CHECK_THROWS_AS(run_general(ball, Vec::Ones(3), {}), DimensionError);
  GeneralOptions opt;
  opt.strategy = UpdateStrategy::nonneg();
  CHECK_THROWS_AS(run_general(ball, v2(1, 1), opt), InvalidArgument);
}

TEST_CASE("per iteration invariants on translated balls") {
  std::mt19937_64 rng(808);
  for (int trial = 0; trial < 9; ++trial) {
    const int n = 2 + trial % 3;
    const double radius = std::uniform_real_distribution<double>(0.3, 1.0)(rng);
    Vec center = random_vec(rng, n);
    center *= std::uniform_real_distribution<double>(0.5, 2.0)(rng) / center.norm();
    const BallOracle ball(center, radius);
    const Vec c = random_vec(rng, n);
    const Vec cu = c / c.norm();
    const double big_r = ball.outer_radius();
    const double opt_value = c.dot(center) + radius * c.norm();
    // Gap bound in unit-objective terms.
    const double opt_unit = cu.dot(center) + radius;

    UpdateStrategy strategy = UpdateStrategy::segment_only();
    if (trial % 3 == 1) strategy = UpdateStrategy::fully_corrective(1 + trial % 2 * 9);
    if (trial % 3 == 2) strategy = UpdateStrategy::partially_corrective();

    GeneralState s = GeneralState::initial(c, big_r);
    for (int t = 1; t <= 600; ++t) {
      const double d = s.residual();
      const double gamma = s.reported_gamma();
      CHECK(d <= 8.0 / std::sqrt(static_cast<double>(t)) + 1e-12);
      CHECK(gamma <= opt_value + 1e-6);
      if (const auto b = general_dual_bound(s)) CHECK(*b >= opt_value - 1e-9);
      if (d <= radius / (8.0 * big_r)) {
        const double margin = opt_unit - cu.dot(center);
        CHECK(opt_unit <= s.gamma * big_r + 8.0 * big_r * margin / radius * d + 1e-9);
      }
      general_step(s, ball, strategy);
      CHECK(s.reported_gamma() >= gamma);
      CHECK(s.residual() <= d + 1e-12);
      CHECK(s.residual() * s.residual() <= (1.0 - d * d / 8.0) * d * d + 1e-12);
      CHECK(s.lambda >= 0.0);
      CHECK(s.lambda <= 1.0);
      CHECK(s.min_beta >= 1.0);
      if (s.incumbent) CHECK(ball.contains(*s.incumbent));
    }
    CHECK(s.max_decomposition_error < 1e-8);
    CHECK(s.max_orthogonality_error < 1e-8);
  }
}

TEST_CASE("trace layout") {
  const PolytopeOracle cube = make_cube_oracle(2);
  GeneralOptions opt;
  opt.stop = StopRule::iterations(40);
  const GeneralResult r = run_general(cube, v2(1, 2), opt);
  CHECK(r.iterations == 40);
  REQUIRE(r.trace.rows.size() == 41);
  CHECK(r.trace.rows.front().kind == StepKind::Init);
  CHECK(*r.trace.rows.front().gamma == doctest::Approx(-std::sqrt(5.0) * std::sqrt(2.0)));
  CHECK_FALSE(r.trace.rows.front().dual_bound);
  for (std::size_t i = 1; i < r.trace.rows.size(); ++i) {
    CHECK(r.trace.rows[i].residual <= r.trace.rows[i - 1].residual + 1e-12);
  }
}
