#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "oracleopt/certificates.hpp"
#include "oracleopt/combinatorial.hpp"
#include "oracleopt/error.hpp"
#include "oracleopt/harness.hpp"

using namespace oracleopt;

namespace {

constexpr int kExitConverged = 0;
constexpr int kExitError = 1;
constexpr int kExitCapped = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --flag values, keyed like the config file.
struct ConfigFlags {
  std::string config_file;
  std::map<std::string, std::string> values;

  void attach(CLI::App* app) {
    app->add_option("--config", config_file, "key=value configuration file");
    for (const std::string& key : config_keys()) {
      std::string flag = "--" + key;
      for (char& ch : flag) {
        if (ch == '_') ch = '-';
      }
      app->add_option_function<std::string>(
          flag, [this, key](const std::string& v) { values[key] = v; }, "overrides '" + key + "'");
    }
  }

  ExperimentConfig build() const {
    ExperimentConfig cfg;
    if (!config_file.empty()) {
      for (const auto& [k, v] : parse_config_text(read_file(config_file))) cfg.set(k, v);
    }
    for (const auto& [k, v] : config_from_environment()) cfg.set(k, v);
    for (const auto& [k, v] : values) cfg.set(k, v);
    cfg.validate();
    return cfg;
  }
};

std::string describe(const RunSummary& s) {
  auto opt = [](const std::optional<double>& v) {
    return v ? fmt::format("{:.10g}", *v) : std::string("-");
  };
  return fmt::format(
      "problem={} method={} frequency={} init={} seed={} iterations={} gamma={:.10g} "
      "dual_bound={} lp_bound={} reference={:.10g} converged={}",
      to_string(s.problem), to_string(s.method), s.frequency, to_string(s.init), s.seed,
      s.iterations, s.gamma, opt(s.dual_bound), opt(s.final_lp_bound), s.reference_opt,
      s.converged);
}

void warn_cap(const RunSummary& s) {
  if (s.cap_binding > 0) {
    std::cerr << fmt::format(
        "warning: odd-set search reported Inside {} time(s) while a support component exceeded "
        "the size cap\n",
        s.cap_binding);
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_run(const ConfigFlags& flags) {
  const ExperimentConfig cfg = flags.build();
  const RunSummary s = run_experiment(cfg);
  const std::string path = write_run_outputs(cfg, s);
  std::cout << describe(s) << '\n' << "trace: " << path << '\n';
  warn_cap(s);
  return s.converged ? kExitConverged : kExitCapped;
}

struct SweepArgs {
  int seeds = 16;
  std::string methods = "polar,cutloop";
  std::string frequencies = "0,1,10";
  std::string inits = "standard,optimal";
  bool desk = true;
  std::string table_csv;
};

int cmd_sweep(const ConfigFlags& flags, const SweepArgs& args) {
  const ExperimentConfig base = flags.build();
  if (args.seeds < 1) throw InvalidArgument("seeds must be positive");
  std::vector<RunSummary> summaries;
  for (const std::string& method : split_list(args.methods)) {
    const bool cut = method == "cutloop";
    const std::vector<std::string> freqs = cut ? std::vector<std::string>{"0"} : split_list(args.frequencies);
    const std::vector<std::string> inits = cut ? std::vector<std::string>{"standard"} : split_list(args.inits);
    for (const std::string& freq : freqs) {
      for (const std::string& init : inits) {
        for (int i = 0; i < args.seeds; ++i) {
          ExperimentConfig cfg = args.desk ? desk_instance(base, i) : base;
          if (!args.desk) cfg.seed = base.seed + static_cast<std::uint64_t>(i);
          cfg.set("method", method);
          cfg.set("frequency", freq);
          cfg.set("init", init);
          cfg.out = cut ? fmt::format("{}/cutloop", base.out)
                        : fmt::format("{}/{}_f{}_{}", base.out, method, freq, init);
          RunSummary s = run_experiment(cfg);
          write_run_outputs(cfg, s);
          std::cerr << describe(s) << '\n';
          warn_cap(s);
          s.trace.rows.clear();
          summaries.push_back(std::move(s));
        }
      }
    }
  }
  const Table t = emit_table(summaries);
  std::cout << t.text;
  if (!args.table_csv.empty()) {
    std::ofstream out(args.table_csv);
    if (!out) throw Error(fmt::format("cannot write '{}'", args.table_csv));
    out << t.csv;
  }
  return kExitConverged;
}

int cmd_gen(int triangles, int nodes, std::uint64_t seed, const std::string& out_path) {
  const Graph g = generate_triangle_instance(nodes, triangles, seed);
  const std::string comment =
      fmt::format("triangle instance seed={} triangles={} nodes={}", seed, triangles, nodes);
  if (out_path == "-") {
    write_dimacs(std::cout, g, comment);
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error(fmt::format("cannot write '{}'", out_path));
    write_dimacs(out, g, comment);
  }
  return kExitConverged;
}

int cmd_verify(const std::string& cert_path, const std::string& instance_path) {
  std::ifstream cert_in(cert_path);
  if (!cert_in) throw Error(fmt::format("cannot open '{}'", cert_path));
  std::ifstream rows_in(instance_path);
  if (!rows_in) throw Error(fmt::format("cannot open '{}'", instance_path));
  const DualCertificate cert = read_certificate(cert_in);
  const ConstraintSet set = read_constraint_set(rows_in);
  const VerifyReport rep = verify_certificate(cert, set.rows, set.objective);
  std::cout << (rep.passed() ? "PASS " : "FAIL ") << rep.summary() << '\n';
  std::cout << fmt::format("claimed_bound={:.17g} incumbent={:.17g}\n", cert.claimed_bound,
                           cert.incumbent_value);
  return rep.passed() ? kExitConverged : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oracle-based convex optimization experiments"};
  app.require_subcommand(1);

  ConfigFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "run one experiment");
  run_flags.attach(run);

  ConfigFlags sweep_flags;
  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "run a seed sweep and print a summary table");
  sweep_flags.attach(sweep);
  sweep->add_option("--seeds", sweep_args.seeds, "number of instances");
  sweep->add_option("--methods", sweep_args.methods, "comma separated methods");
  sweep->add_option("--frequencies", sweep_args.frequencies, "comma separated frequencies");
  sweep->add_option("--inits", sweep_args.inits, "comma separated initializations");
  sweep->add_flag("!--fixed-instance", sweep_args.desk, "vary only the seed");
  sweep->add_option("--table-csv", sweep_args.table_csv, "also write the table as CSV");

  int triangles = 10;
  int nodes = 40;
  std::uint64_t seed = 1;
  std::string gen_out = "-";
  CLI::App* gen = app.add_subcommand("gen", "write a triangle instance in DIMACS format");
  gen->add_option("--triangles", triangles, "number of sampled triangles")->required();
  gen->add_option("--nodes", nodes, "number of nodes")->required();
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--out", gen_out, "output file, '-' for stdout");

  std::string cert_path;
  std::string instance_path;
  CLI::App* verify = app.add_subcommand("verify", "check a dual certificate");
  verify->add_option("--certificate", cert_path, "certificate file")->required();
  verify->add_option("--instance", instance_path, "constraint set file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*run) return cmd_run(run_flags);
    if (*sweep) return cmd_sweep(sweep_flags, sweep_args);
    if (*gen) return cmd_gen(triangles, nodes, seed, gen_out);
    if (*verify) return cmd_verify(cert_path, instance_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
