#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "oracleopt/combinatorial.hpp"
#include "oracleopt/corrective.hpp"
#include "oracleopt/cut_loop.hpp"
#include "oracleopt/error.hpp"
#include "oracleopt/harness.hpp"
#include "oracleopt/lp.hpp"
#include "oracleopt/solver_general.hpp"
#include "oracleopt/solver_polar.hpp"

namespace py = pybind11;
using namespace oracleopt;

namespace {

// Oracle backed by a Python callable returning None (inside) or (a, b).
class CallableOracle final : public SeparationOracle {
 public:
  CallableOracle(py::function fn, Eigen::Index dim, double outer, std::optional<double> inner)
      : fn_(std::move(fn)), dim_(dim), outer_(outer), inner_(inner) {}

  SeparationResult separate(const Vec& x) const override {
    py::gil_scoped_acquire gil;
    py::object out = fn_(x);
    if (out.is_none()) return SeparationResult::inside();
    auto [a, b] = out.cast<std::pair<Vec, double>>();
    if (a.size() != dim_) throw DimensionError("separating row has the wrong dimension");
    Constraint row{a, b};
    return SeparationResult::violated(row, row.violation(x));
  }
  Eigen::Index dimension() const override { return dim_; }
  double outer_radius() const override { return outer_; }
  std::optional<double> inner_radius() const override { return inner_; }

 private:
  py::function fn_;
  Eigen::Index dim_;
  double outer_;
  std::optional<double> inner_;
};

UpdateStrategy strategy_from(const std::string& name, int frequency) {
  if (name == "segment") return UpdateStrategy::segment_only();
  if (name == "fully_corrective") return UpdateStrategy::fully_corrective(frequency);
  if (name == "partially_corrective") return UpdateStrategy::partially_corrective();
  if (name == "nonneg") return UpdateStrategy::nonneg();
  throw InvalidArgument("unknown strategy '" + name + "'");
}

StopRule stop_from(int max_iterations, std::optional<double> rel_gap) {
  StopRule s = StopRule::iterations(max_iterations);
  s.rel_gap = rel_gap;
  return s;
}

std::vector<Constraint> rows_from(const std::vector<std::pair<Vec, double>>& rows) {
  std::vector<Constraint> out;
  out.reserve(rows.size());
  for (const auto& [a, b] : rows) out.push_back({a, b});
  return out;
}

std::string csv_of(const ConvergenceTrace& t) {
  std::ostringstream out;
  t.write_csv(out);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_oracleopt, m) {
  m.doc() = "Convex optimization over separation oracles";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", error.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<LpInfeasible>(m, "LpInfeasible", error.ptr());
  py::register_exception<LpUnbounded>(m, "LpUnbounded", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  py::class_<Constraint>(m, "Constraint")
      .def(py::init([](Vec a, double b) { return Constraint{std::move(a), b}; }), py::arg("a"), py::arg("b"))
      .def_readwrite("a", &Constraint::a)
      .def_readwrite("b", &Constraint::b)
      .def("violation", &Constraint::violation)
      .def("__repr__", [](const Constraint& c) {
        std::ostringstream s;
        s << "Constraint(a=[" << c.a.transpose() << "], b=" << c.b << ")";
        return s.str();
      });

  py::class_<SeparationResult>(m, "SeparationResult")
      .def_property_readonly("inside", &SeparationResult::is_inside)
      .def_property_readonly("cut", [](const SeparationResult& r) -> std::optional<Constraint> {
        if (r.is_inside()) return std::nullopt;
        return r.cut();
      })
      .def_property_readonly("violation", &SeparationResult::violation);

  py::class_<SeparationOracle>(m, "SeparationOracle")
      .def("separate", &SeparationOracle::separate, py::arg("x"))
      .def("contains", &SeparationOracle::contains, py::arg("x"))
      .def_property_readonly("dimension", &SeparationOracle::dimension)
      .def_property_readonly("outer_radius", &SeparationOracle::outer_radius)
      .def_property_readonly("inner_radius", &SeparationOracle::inner_radius);

  py::class_<BallOracle, SeparationOracle>(m, "BallOracle")
      .def(py::init<Vec, double>(), py::arg("center"), py::arg("radius"))
      .def_property_readonly("center", &BallOracle::center)
      .def_property_readonly("radius", &BallOracle::radius);

  py::class_<PolytopeOracle, SeparationOracle>(m, "PolytopeOracle")
      .def(py::init([](const std::vector<std::pair<Vec, double>>& rows, std::optional<Vec> lower,
                       std::optional<Vec> upper, std::optional<double> outer,
                       std::optional<double> inner) {
             std::optional<BoxBounds> box;
             if (lower || upper) {
               if (!lower || !upper) throw InvalidArgument("give both lower and upper bounds");
               box = BoxBounds{*lower, *upper};
             }
             return PolytopeOracle(rows_from(rows), box, outer, inner);
           }),
           py::arg("rows"), py::arg("lower") = std::nullopt, py::arg("upper") = std::nullopt,
           py::arg("outer_radius") = std::nullopt, py::arg("inner_radius") = std::nullopt)
      .def_property_readonly("rows", &PolytopeOracle::rows);
  m.def("cube", [](Eigen::Index n) { return make_cube_oracle(n); }, py::arg("n"), "The box [-1, 1]^n.");

  py::class_<CallableOracle, SeparationOracle>(m, "CallableOracle")
      .def(py::init<py::function, Eigen::Index, double, std::optional<double>>(), py::arg("separate"),
           py::arg("dimension"), py::arg("outer_radius"), py::arg("inner_radius") = std::nullopt,
           py::keep_alive<1, 2>());

  py::class_<Graph>(m, "Graph")
      .def(py::init<int, const std::vector<std::pair<int, int>>&>(), py::arg("num_nodes"), py::arg("edges"))
      .def_readonly("num_nodes", &Graph::num_nodes)
      .def_readonly("edges", &Graph::edges)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def("to_dimacs", [](const Graph& g) {
        std::ostringstream out;
        write_dimacs(out, g);
        return out.str();
      });
  m.def("parse_dimacs", [](const std::string& text) { return parse_dimacs(text); }, py::arg("text"));
  m.def("triangle_instance", &generate_triangle_instance, py::arg("nodes"), py::arg("triangles"),
        py::arg("seed"));
  m.def("random_graph", &generate_random_graph, py::arg("nodes"), py::arg("edge_probability"),
        py::arg("seed"));
  m.def("separate_oddset", &separate_oddset, py::arg("graph"), py::arg("x"),
        py::arg("max_set_size") = kDefaultOddSetCap);
  m.def("separate_clique", &separate_clique, py::arg("graph"), py::arg("x"));
  m.def("max_matching_size", &max_matching_size, py::arg("graph"));
  m.def("clique_relaxation_opt", &clique_relaxation_opt, py::arg("graph"));

  py::class_<MatchingOracle, SeparationOracle>(m, "MatchingOracle")
      .def(py::init<Graph, int>(), py::arg("graph"), py::arg("max_set_size") = kDefaultOddSetCap);
  py::class_<StableSetOracle, SeparationOracle>(m, "StableSetOracle")
      .def(py::init<Graph>(), py::arg("graph"));

  py::class_<DualCertificate>(m, "DualCertificate")
      .def_property_readonly("setting", [](const DualCertificate& c) { return to_string(c.setting); })
      .def_readonly("multipliers", &DualCertificate::multipliers)
      .def_readonly("ball_normal", &DualCertificate::ball_normal)
      .def_readonly("radius", &DualCertificate::radius)
      .def_readonly("ball_coefficient", &DualCertificate::ball_coefficient)
      .def_readonly("slack", &DualCertificate::slack)
      .def_readonly("claimed_bound", &DualCertificate::claimed_bound)
      .def_readonly("incumbent_value", &DualCertificate::incumbent_value)
      .def("to_text", [](const DualCertificate& c) {
        std::ostringstream out;
        write_certificate(out, c);
        return out.str();
      });

  py::class_<VerifyReport>(m, "VerifyReport")
      .def_readonly("multipliers_nonnegative", &VerifyReport::multipliers_nonnegative)
      .def_readonly("normal_matches", &VerifyReport::normal_matches)
      .def_readonly("rhs_within_bound", &VerifyReport::rhs_within_bound)
      .def_readonly("bound_above_incumbent", &VerifyReport::bound_above_incumbent)
      .def_readonly("slack_nonnegative", &VerifyReport::slack_nonnegative)
      .def_readonly("normal_error", &VerifyReport::normal_error)
      .def_property_readonly("passed", &VerifyReport::passed)
      .def("__repr__", &VerifyReport::summary);
  m.def("verify_certificate", &verify_certificate, py::arg("certificate"), py::arg("history"),
        py::arg("objective"));

  py::class_<PolarResult>(m, "PolarResult")
      .def_readonly("incumbent", &PolarResult::incumbent)
      .def_readonly("gamma", &PolarResult::gamma)
      .def_readonly("dual_bound", &PolarResult::dual_bound)
      .def_readonly("certificate", &PolarResult::certificate)
      .def_readonly("history", &PolarResult::history)
      .def_readonly("converged", &PolarResult::converged)
      .def_readonly("iterations", &PolarResult::iterations)
      .def_property_readonly("min_query_coord", [](const PolarResult& r) { return r.state.min_query_coord; })
      .def_property_readonly("trace_csv", [](const PolarResult& r) { return csv_of(r.trace); });

  m.def(
      "run_polar",
      [](const SeparationOracle& oracle, const Vec& c, std::optional<double> gamma1, bool packing,
         const std::string& strategy, int frequency, int max_iterations, std::optional<double> rel_gap,
         const std::vector<std::pair<Vec, double>>& initial_rows) {
        PolarOptions opt;
        opt.gamma1 = gamma1;
        opt.mode = packing ? PolarMode::Packing : PolarMode::Standard;
        opt.strategy = strategy_from(strategy, frequency);
        opt.stop = stop_from(max_iterations, rel_gap);
        opt.initial_rows = rows_from(initial_rows);
        py::gil_scoped_release release;
        return run_polar(oracle, c, opt);
      },
      py::arg("oracle"), py::arg("c"), py::arg("gamma1") = std::nullopt, py::arg("packing") = false,
      py::arg("strategy") = "segment", py::arg("frequency") = 1, py::arg("max_iterations") = 1000,
      py::arg("rel_gap") = 0.01, py::arg("initial_rows") = std::vector<std::pair<Vec, double>>{});

  py::class_<GeneralResult>(m, "GeneralResult")
      .def_readonly("incumbent", &GeneralResult::incumbent)
      .def_readonly("gamma", &GeneralResult::gamma)
      .def_readonly("dual_bound", &GeneralResult::dual_bound)
      .def_readonly("certificate", &GeneralResult::certificate)
      .def_readonly("history", &GeneralResult::history)
      .def_readonly("converged", &GeneralResult::converged)
      .def_readonly("iterations", &GeneralResult::iterations)
      .def_property_readonly("trace_csv", [](const GeneralResult& r) { return csv_of(r.trace); });

  m.def(
      "run_general",
      [](const SeparationOracle& oracle, const Vec& c, const std::string& strategy, int frequency,
         int max_iterations, std::optional<double> rel_gap) {
        GeneralOptions opt;
        opt.strategy = strategy_from(strategy, frequency);
        opt.stop = stop_from(max_iterations, rel_gap);
        py::gil_scoped_release release;
        return run_general(oracle, c, opt);
      },
      py::arg("oracle"), py::arg("c"), py::arg("strategy") = "segment", py::arg("frequency") = 1,
      py::arg("max_iterations") = 1000, py::arg("rel_gap") = 0.01);

  m.def(
      "solve_lp",
      [](const Vec& objective, const std::vector<std::pair<Vec, double>>& rows, std::optional<Vec> lower,
         std::optional<Vec> upper) {
        LinearProgram lp = LinearProgram::nonnegative(objective);
        lp.rows = rows_from(rows);
        if (lower) lp.lower = *lower;
        if (upper) lp.upper = *upper;
        const LpSolution s = solve_lp(lp);
        return py::make_tuple(s.x, s.value);
      },
      py::arg("objective"), py::arg("rows"), py::arg("lower") = std::nullopt, py::arg("upper") = std::nullopt,
      "Maximizes <objective, x> subject to the rows; variables default to x >= 0.");

  m.def(
      "min_norm_point",
      [](const Vec& target, const std::vector<Vec>& atoms, bool recession_nonneg) {
        const MinNormResult r = min_norm_point(target, atoms, recession_nonneg);
        return py::make_tuple(r.q, r.weights);
      },
      py::arg("target"), py::arg("atoms"), py::arg("recession_nonneg") = false);

  py::class_<RunSummary>(m, "RunSummary")
      .def_readonly("iterations", &RunSummary::iterations)
      .def_readonly("gamma", &RunSummary::gamma)
      .def_readonly("dual_bound", &RunSummary::dual_bound)
      .def_readonly("final_lp_bound", &RunSummary::final_lp_bound)
      .def_readonly("reference_opt", &RunSummary::reference_opt)
      .def_readonly("converged", &RunSummary::converged)
      .def_readonly("certificate", &RunSummary::certificate)
      .def_property_readonly("history", [](const RunSummary& s) { return s.history.rows; })
      .def_property_readonly("objective", [](const RunSummary& s) { return s.history.objective; })
      .def_property_readonly("trace_csv", [](const RunSummary& s) { return csv_of(s.trace); });

  m.def(
      "run_experiment",
      [](const std::map<std::string, std::string>& settings) {
        ExperimentConfig cfg;
        for (const auto& [k, v] : settings) cfg.set(k, v);
        py::gil_scoped_release release;
        return run_experiment(cfg);
      },
      py::arg("settings"), "Runs one experiment from key=value settings.");
  m.def("config_keys", &config_keys);
}
