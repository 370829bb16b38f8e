#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oracleopt/certificates.hpp"
#include "oracleopt/trace.hpp"

namespace oracleopt {

enum class Problem { Matching, StableSet, SyntheticBall, SyntheticPolytope };
enum class Method { Polar, General, CutLoop };
enum class Initialization { Standard, Optimal };
enum class StopKind { Lp, Gap };

std::string to_string(Problem p);
std::string to_string(Method m);
std::string to_string(Initialization i);
std::string to_string(StopKind s);

struct ExperimentConfig {
  Problem problem = Problem::Matching;
  Method method = Method::Polar;
  int frequency = 0;
  Initialization init = Initialization::Standard;
  bool basic_constraints = true;  // false: upper bounds only
  int iterations = 1000;
  StopKind stop = StopKind::Lp;
  double gap = 0.01;
  int lp_every = 1;
  std::uint64_t seed = 1;
  std::string out = ".";

  // Instance.
  std::string graph_file;  // DIMACS; generated when empty
  int nodes = 40;
  int triangles = 10;
  double edge_probability = 0.3;
  int dim = 5;
  int oddset_cap = 9;

  /// Applies one key=value setting. Throws InvalidArgument on unknown keys
  /// or bad values.
  void set(const std::string& key, const std::string& value);
  /// Checks cross-field consistency.
  void validate() const;
};

/// Keys accepted by ExperimentConfig::set.
const std::vector<std::string>& config_keys();

/// Flat key=value text; '#' starts a comment.
std::map<std::string, std::string> parse_config_text(const std::string& text);
/// ORACLEOPT_<KEY> variables for every known key.
std::map<std::string, std::string> config_from_environment();

struct RunSummary {
  Problem problem = Problem::Matching;
  Method method = Method::Polar;
  int frequency = 0;
  Initialization init = Initialization::Standard;
  std::uint64_t seed = 0;
  int iterations = 0;
  double gamma = 0.0;
  std::optional<double> dual_bound;
  std::optional<double> final_lp_bound;
  double reference_opt = 0.0;
  bool converged = false;
  int cap_binding = 0;  // Inside verdicts with a binding odd-set cap

  ConvergenceTrace trace;
  std::optional<DualCertificate> certificate;
  ConstraintSet history;
};

RunSummary run_experiment(const ExperimentConfig& config);

/// Writes <problem>_<method>_<seed>.csv and, when a certificate exists, the
/// matching .cert and .rows files into config.out. Returns the trace path.
std::string write_run_outputs(const ExperimentConfig& config, const RunSummary& summary);

/// Instance `index` of the desk-scale sweep: seed + index, and for matching
/// 30 + 2 index nodes (at most 60) with 4 + index % 16 triangles; for
/// stable set 15 + index % 16 nodes.
ExperimentConfig desk_instance(ExperimentConfig base, int index);

struct Table {
  std::string csv;
  std::string text;
};

/// Mean iterations per (method, frequency, initialization) over converged
/// runs.
Table emit_table(const std::vector<RunSummary>& summaries);

}  // namespace oracleopt
