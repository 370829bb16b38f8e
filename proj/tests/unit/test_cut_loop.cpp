#include <doctest.h>

#include "oracleopt/combinatorial.hpp"
#include "oracleopt/cut_loop.hpp"
#include "oracleopt/error.hpp"

using namespace oracleopt;

namespace {

LinearProgram box(int n, double lo, double hi) {
  LinearProgram lp = LinearProgram::nonnegative(Vec::Zero(n));
  lp.lower = Vec::Constant(n, lo);
  lp.upper = Vec::Constant(n, hi);
  return lp;
}

StopRule lp_rule(double reference, double factor, int cap) {
  StopRule s = StopRule::iterations(cap);
  LpStopRule r;
  r.reference_opt = reference;
  r.factor = factor;
  s.lp = r;
  return s;
}

}  // namespace

TEST_CASE("disc inside a box") {
  const BallOracle disc(Vec::Zero(2), 1.0);
  const Vec c = Vec::Unit(2, 0);
  const CutLoopResult r = cut_loop(disc, c, box(2, -1.0, 1.0), lp_rule(1.0, 1.01, 200));
  CHECK(r.converged);
  CHECK(r.value <= 1.01 + 1e-9);
  CHECK(r.value >= 1.0 - 1e-9);
  CHECK(r.cuts == static_cast<int>(r.separated.size()));
  CHECK(r.trace.rows.size() == static_cast<std::size_t>(r.cuts + 1));
  for (std::size_t i = 1; i < r.trace.rows.size(); ++i) {
    CHECK(*r.trace.rows[i].dual_bound <= *r.trace.rows[i - 1].dual_bound + 1e-12);
    CHECK(r.trace.rows[i].kind == StepKind::LpSolve);
  }
}

TEST_CASE("no cuts when the first optimum is feasible") {
  const PolytopeOracle cube = make_cube_oracle(3);
  const CutLoopResult r = cut_loop(cube, Vec::Ones(3), box(3, -1.0, 1.0), StopRule::iterations(50));
  CHECK(r.cuts == 0);
  CHECK(r.oracle_satisfied);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(3.0));
  REQUIRE(r.trace.rows.size() == 1);
  CHECK(r.trace.rows[0].oracle_calls == 1);
}

TEST_CASE("values never increase on a matching instance") {
  const Graph g = generate_triangle_instance(12, 4, 3);
  const MatchingOracle oracle(g, g.num_nodes);
  const Vec c = Vec::Ones(g.num_edges());
  const LinearProgram base = packing_lp(c.size(), matching_initial_rows(g, InitialRows::Basic));
  const double opt_value = brute_force_matching_opt(g);
  const CutLoopResult r = cut_loop(oracle, c, base, lp_rule(opt_value, 1.01, 1000));
  CHECK(r.converged);
  CHECK(r.value <= 1.01 * opt_value + 1e-9);
  CHECK(r.value >= opt_value - 1e-9);
  for (std::size_t i = 1; i < r.trace.rows.size(); ++i) {
    CHECK(*r.trace.rows[i].lp_bound <= *r.trace.rows[i - 1].lp_bound + 1e-9);
  }
}

TEST_CASE("iteration cap") {
  const BallOracle disc(Vec::Zero(2), 1.0);
  const CutLoopResult r = cut_loop(disc, Vec::Ones(2), box(2, -1.0, 1.0), StopRule::iterations(3));
  CHECK_FALSE(r.converged);
  CHECK(r.cuts == 3);
}

TEST_CASE("unbounded relaxations are rejected") {
  const BallOracle disc(Vec::Zero(2), 1.0);
  CHECK_THROWS_WITH_AS(cut_loop(disc, Vec::Ones(2), LinearProgram::nonnegative(Vec::Zero(2)),
                                StopRule::iterations(5)),
                       "add bounds to initial constraints", Error);
  CHECK_THROWS_AS(cut_loop(disc, Vec::Ones(3), box(3, -1, 1), StopRule::iterations(5)),
                  DimensionError);
}
