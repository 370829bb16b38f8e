#include "oracleopt/harness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include "oracleopt/combinatorial.hpp"
#include "oracleopt/cut_loop.hpp"
#include "oracleopt/error.hpp"
#include "oracleopt/solver_general.hpp"
#include "oracleopt/solver_polar.hpp"

namespace oracleopt {

std::string to_string(Problem p) {
  switch (p) {
    case Problem::Matching: return "matching";
    case Problem::StableSet: return "stableset";
    case Problem::SyntheticBall: return "synthetic-ball";
    case Problem::SyntheticPolytope: return "synthetic-polytope";
  }
  return "unknown";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Polar: return "polar";
    case Method::General: return "general";
    case Method::CutLoop: return "cutloop";
  }
  return "unknown";
}

std::string to_string(Initialization i) {
  return i == Initialization::Standard ? "standard" : "optimal";
}

std::string to_string(StopKind s) { return s == StopKind::Lp ? "lp" : "gap"; }

namespace {

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw InvalidArgument(fmt::format("bad value for {}: '{}'", key, value));
}

long long parse_integer(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) bad_value(key, value);
    return v;
  } catch (const std::logic_error&) {
    bad_value(key, value);
  }
}

int parse_int(const std::string& key, const std::string& value) {
  const long long v = parse_integer(key, value);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    bad_value(key, value);
  }
  return static_cast<int>(v);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size() || !std::isfinite(v)) bad_value(key, value);
    return v;
  } catch (const std::logic_error&) {
    bad_value(key, value);
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "problem", "method",    "frequency", "init",      "constraints", "iters",
      "stop",    "gap",       "lp_every",  "seed",      "out",         "graph",
      "nodes",   "triangles", "edge_prob", "dim",       "oddset_cap"};
  return keys;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "problem") {
    if (value == "matching") {
      problem = Problem::Matching;
    } else if (value == "stableset") {
      problem = Problem::StableSet;
    } else if (value == "synthetic-ball") {
      problem = Problem::SyntheticBall;
    } else if (value == "synthetic-polytope") {
      problem = Problem::SyntheticPolytope;
    } else {
      bad_value(key, value);
    }
  } else if (key == "method") {
    if (value == "polar") {
      method = Method::Polar;
    } else if (value == "general") {
      method = Method::General;
    } else if (value == "cutloop") {
      method = Method::CutLoop;
    } else {
      bad_value(key, value);
    }
  } else if (key == "frequency") {
    frequency = parse_int(key, value);
  } else if (key == "init") {
    if (value == "standard") {
      init = Initialization::Standard;
    } else if (value == "optimal") {
      init = Initialization::Optimal;
    } else {
      bad_value(key, value);
    }
  } else if (key == "constraints") {
    if (value == "basic") {
      basic_constraints = true;
    } else if (value == "upper_bound") {
      basic_constraints = false;
    } else {
      bad_value(key, value);
    }
  } else if (key == "iters") {
    iterations = parse_int(key, value);
  } else if (key == "stop") {
    if (value == "lp") {
      stop = StopKind::Lp;
    } else if (value == "gap") {
      stop = StopKind::Gap;
    } else {
      bad_value(key, value);
    }
  } else if (key == "gap") {
    gap = parse_double(key, value);
  } else if (key == "lp_every") {
    lp_every = parse_int(key, value);
  } else if (key == "seed") {
    const long long v = parse_integer(key, value);
    if (v < 0) bad_value(key, value);
    seed = static_cast<std::uint64_t>(v);
  } else if (key == "out") {
    out = value;
  } else if (key == "graph") {
    graph_file = value;
  } else if (key == "nodes") {
    nodes = parse_int(key, value);
  } else if (key == "triangles") {
    triangles = parse_int(key, value);
  } else if (key == "edge_prob") {
    edge_probability = parse_double(key, value);
  } else if (key == "dim") {
    dim = parse_int(key, value);
  } else if (key == "oddset_cap") {
    oddset_cap = parse_int(key, value);
  } else {
    throw InvalidArgument(fmt::format("unknown config key '{}'", key));
  }
}

void ExperimentConfig::validate() const {
  if (frequency < 0) throw InvalidArgument("frequency must be nonnegative");
  if (iterations < 1) throw InvalidArgument("iters must be positive");
  if (!(gap > 0.0)) throw InvalidArgument("gap must be positive");
  if (lp_every < 1) throw InvalidArgument("lp_every must be positive");
  if (nodes < 1) throw InvalidArgument("nodes must be positive");
  if (triangles < 0) throw InvalidArgument("triangles must be nonnegative");
  if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
    throw InvalidArgument("edge_prob must lie in [0, 1]");
  }
  if (dim < 1) throw InvalidArgument("dim must be positive");
  if (oddset_cap < 3) throw InvalidArgument("oddset_cap must be at least 3");
  if (problem == Problem::Matching && graph_file.empty() && nodes < 3) {
    throw InvalidArgument("triangle instances need at least 3 nodes");
  }
  if (method == Method::General && init == Initialization::Optimal) {
    throw InvalidArgument("optimal initialization applies to the polar method only");
  }
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(number, "expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(number, "empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> config_from_environment() {
  std::map<std::string, std::string> out;
  for (const std::string& key : config_keys()) {
    std::string name = "ORACLEOPT_";
    for (char ch : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (const char* v = std::getenv(name.c_str())) out[key] = v;
  }
  return out;
}

namespace {

struct Instance {
  std::unique_ptr<SeparationOracle> oracle;
  const MatchingOracle* matching = nullptr;
  Vec objective;
  std::vector<Constraint> initial_rows;
  LinearProgram base_lp;
  bool packing = false;
  bool combinatorial = false;
  std::optional<double> reference;
  std::optional<Vec> optimal_point;
};

Graph load_graph(const ExperimentConfig& cfg) {
  std::ifstream in(cfg.graph_file);
  if (!in) throw Error(fmt::format("cannot open graph file '{}'", cfg.graph_file));
  return read_dimacs(in);
}

LinearProgram box_lp(Eigen::Index d) {
  LinearProgram lp = LinearProgram::nonnegative(Vec::Ones(d));
  lp.lower = Vec::Constant(d, -1.0);
  lp.upper = Vec::Ones(d);
  return lp;
}

Instance make_instance(const ExperimentConfig& cfg) {
  Instance inst;
  const InitialRows preset = cfg.basic_constraints ? InitialRows::Basic : InitialRows::UpperBoundsOnly;
  switch (cfg.problem) {
    case Problem::Matching: {
      Graph g = cfg.graph_file.empty()
                    ? generate_triangle_instance(cfg.nodes, cfg.triangles, cfg.seed)
                    : load_graph(cfg);
      inst.objective = Vec::Ones(g.num_edges());
      inst.initial_rows = matching_initial_rows(g, preset);
      inst.reference = g.num_nodes <= 24 ? brute_force_matching_opt(g) : max_matching_size(g);
      inst.optimal_point = maximum_matching_indicator(g);
      auto oracle = std::make_unique<MatchingOracle>(std::move(g), cfg.oddset_cap);
      inst.matching = oracle.get();
      inst.oracle = std::move(oracle);
      inst.packing = true;
      inst.combinatorial = true;
      break;
    }
    case Problem::StableSet: {
      Graph g = cfg.graph_file.empty()
                    ? generate_random_graph(cfg.nodes, cfg.edge_probability, cfg.seed)
                    : load_graph(cfg);
      inst.objective = Vec::Ones(g.num_nodes);
      inst.initial_rows = stable_set_initial_rows(g, preset);
      if (g.num_nodes <= 30) {
        const LpSolution sol = clique_relaxation_solution(g);
        inst.reference = sol.value;
        inst.optimal_point = sol.x;
      }
      inst.oracle = std::make_unique<StableSetOracle>(std::move(g));
      inst.packing = true;
      inst.combinatorial = true;
      break;
    }
    case Problem::SyntheticBall: {
      inst.objective = Vec::Ones(cfg.dim);
      inst.oracle = std::make_unique<BallOracle>(Vec::Zero(cfg.dim), 1.0);
      inst.reference = inst.objective.norm();
      inst.optimal_point = inst.objective / inst.objective.norm();
      break;
    }
    case Problem::SyntheticPolytope: {
      inst.objective = Vec::Ones(cfg.dim);
      inst.oracle = std::make_unique<PolytopeOracle>(make_cube_oracle(cfg.dim));
      inst.reference = static_cast<double>(cfg.dim);
      inst.optimal_point = Vec::Ones(cfg.dim);
      break;
    }
  }
  inst.base_lp = inst.combinatorial ? packing_lp(inst.objective.size(), inst.initial_rows)
                                    : box_lp(inst.objective.size());
  return inst;
}

}  // namespace

RunSummary run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  Instance inst = make_instance(cfg);
  const bool needs_reference = cfg.stop == StopKind::Lp || cfg.method == Method::CutLoop ||
                               cfg.init == Initialization::Optimal;
  if (needs_reference && !inst.reference) {
    throw InvalidArgument("no reference optimum for stable set graphs over 30 nodes");
  }

  StopRule stop;
  stop.max_iterations = cfg.iterations;
  if (cfg.stop == StopKind::Lp || cfg.method == Method::CutLoop) {
    LpStopRule rule;
    rule.base = inst.base_lp;
    rule.reference_opt = *inst.reference;
    rule.factor = 1.0 + cfg.gap;
    rule.every = cfg.lp_every;
    stop.lp = std::move(rule);
  } else {
    stop.rel_gap = cfg.gap;
  }

  RunSummary sum;
  sum.problem = cfg.problem;
  sum.method = cfg.method;
  sum.frequency = cfg.frequency;
  sum.init = cfg.init;
  sum.seed = cfg.seed;
  sum.reference_opt = inst.reference.value_or(std::nan(""));
  sum.history.objective = inst.objective;
  const UpdateStrategy strategy = UpdateStrategy::from_frequency(cfg.frequency);
  const Vec& c = inst.objective;

  switch (cfg.method) {
    case Method::Polar: {
      PolarOptions opt;
      opt.mode = inst.packing ? PolarMode::Packing : PolarMode::Standard;
      opt.initial_rows = inst.initial_rows;
      opt.strategy = strategy;
      opt.stop = stop;
      if (cfg.init == Initialization::Optimal) {
        opt.gamma1 = *inst.reference;
        opt.initial_point = inst.optimal_point;
      } else if (inst.combinatorial) {
        const double r = 1.0 / std::sqrt(static_cast<double>(c.size()));
        opt.gamma1 = r * c.norm();
        opt.initial_point = Vec((r / c.norm()) * c);
      }
      PolarResult res = run_polar(*inst.oracle, c, opt);
      sum.iterations = res.iterations;
      sum.gamma = res.gamma;
      sum.dual_bound = res.dual_bound;
      sum.final_lp_bound = res.final_lp_bound;
      sum.converged = res.converged;
      sum.trace = std::move(res.trace);
      sum.certificate = std::move(res.certificate);
      sum.history.rows = std::move(res.history);
      break;
    }
    case Method::General: {
      GeneralOptions opt;
      opt.strategy = strategy;
      opt.stop = stop;
      GeneralResult res = run_general(*inst.oracle, c, opt);
      sum.iterations = res.iterations;
      sum.gamma = res.gamma;
      sum.dual_bound = res.dual_bound;
      sum.final_lp_bound = res.final_lp_bound;
      sum.converged = res.converged;
      sum.trace = std::move(res.trace);
      sum.certificate = std::move(res.certificate);
      sum.history.rows = std::move(res.history);
      break;
    }
    case Method::CutLoop: {
      CutLoopResult res = cut_loop(*inst.oracle, c, inst.base_lp, stop);
      sum.iterations = res.cuts;
      sum.gamma = res.value;
      sum.dual_bound = res.value;
      sum.final_lp_bound = res.value;
      sum.converged = res.converged;
      sum.trace = std::move(res.trace);
      break;
    }
  }
  if (inst.matching) sum.cap_binding = inst.matching->cap_binding_count();
  return sum;
}

std::string write_run_outputs(const ExperimentConfig& cfg, const RunSummary& sum) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.out);
  fs::create_directories(dir);
  const std::string stem =
      fmt::format("{}_{}_{}", to_string(sum.problem), to_string(sum.method), sum.seed);
  const fs::path trace_path = dir / (stem + ".csv");
  {
    std::ofstream out(trace_path, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot write '{}'", trace_path.string()));
    sum.trace.write_csv(out);
  }
  if (sum.certificate) {
    std::ofstream cert(dir / (stem + ".cert"), std::ios::binary);
    write_certificate(cert, *sum.certificate);
    std::ofstream rows(dir / (stem + ".rows"), std::ios::binary);
    write_constraint_set(rows, sum.history);
  }
  return trace_path.string();
}

ExperimentConfig desk_instance(ExperimentConfig base, int index) {
  if (index < 0) throw InvalidArgument("instance index must be nonnegative");
  base.seed += static_cast<std::uint64_t>(index);
  if (base.problem == Problem::Matching) {
    base.nodes = std::min(60, 30 + 2 * index);
    base.triangles = 4 + index % 16;
  } else if (base.problem == Problem::StableSet) {
    base.nodes = 15 + index % 16;
  }
  return base;
}

Table emit_table(const std::vector<RunSummary>& summaries) {
  struct Group {
    std::string method, frequency, init;
    int runs = 0;
    int converged = 0;
    double total = 0.0;
  };
  std::vector<Group> groups;
  std::vector<std::string> excluded;
  for (const RunSummary& s : summaries) {
    const bool cut = s.method == Method::CutLoop;
    Group key{to_string(s.method), cut ? "-" : std::to_string(s.frequency),
              cut ? "-" : to_string(s.init)};
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.method == key.method && g.frequency == key.frequency && g.init == key.init;
    });
    if (it == groups.end()) {
      groups.push_back(key);
      it = std::prev(groups.end());
    }
    ++it->runs;
    if (s.converged) {
      ++it->converged;
      it->total += s.iterations;
    } else {
      excluded.push_back(fmt::format("{} {} seed {}", to_string(s.problem), key.method, s.seed));
    }
  }

  const std::vector<std::string> header = {"method", "frequency", "init", "runs", "converged",
                                           "mean_iterations"};
  std::vector<std::vector<std::string>> body;
  for (const Group& g : groups) {
    const std::string mean = g.converged == 0
                                 ? std::string("no converged runs")
                                 : fmt::format("{:.2f}", g.total / g.converged);
    body.push_back({g.method, g.frequency, g.init, std::to_string(g.runs),
                    std::to_string(g.converged), mean});
  }

  Table t;
  auto csv_line = [](const std::vector<std::string>& cells) {
    std::string l;
    for (std::size_t i = 0; i < cells.size(); ++i) l += (i ? "," : "") + cells[i];
    return l + "\n";
  };
  t.csv = csv_line(header);
  for (const auto& row : body) t.csv += csv_line(row);

  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& row : body) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  auto text_line = [&](const std::vector<std::string>& cells) {
    std::string l;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) l += "  ";
      l += i < 3 ? fmt::format("{:<{}}", cells[i], width[i]) : fmt::format("{:>{}}", cells[i], width[i]);
    }
    while (!l.empty() && l.back() == ' ') l.pop_back();
    return l + "\n";
  };
  t.text = text_line(header);
  for (const auto& row : body) t.text += text_line(row);
  if (!excluded.empty()) {
    const std::string note =
        fmt::format("* {} unconverged run(s) excluded from the means:", excluded.size());
    t.text += note + "\n";
    t.csv += "# " + note + "\n";
    for (const std::string& e : excluded) {
      t.text += "  " + e + "\n";
      t.csv += "# " + e + "\n";
    }
  }
  return t;
}

}  // namespace oracleopt
