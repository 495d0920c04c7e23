#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qmsr/engine.hpp"
#include "qmsr/errors.hpp"
#include "qmsr/graph.hpp"
#include "qmsr/report.hpp"
#include "qmsr/scenario_io.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kValidation = 2, kContract = 3, kParse = 4 };

struct RunArgs {
  std::string scenario;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<qmsr::Time> horizon;
  bool full = false;
  bool audit = false;
};

struct MonteCarloArgs {
  std::string scenario;
  std::string out;
  int runs = 100;
  std::optional<std::uint64_t> seed;
  bool serial = false;
  bool audit = false;
};

struct RobustnessArgs {
  std::string graph;
  int r = 0;
  int s = 1;
  bool max = false;
};

qmsr::Scenario load(const std::string& path, const std::optional<std::uint64_t>& seed,
                    const std::optional<qmsr::Time>& horizon = std::nullopt) {
  qmsr::Scenario s = qmsr::parse_scenario(path);
  if (seed) s.seed = *seed;
  if (horizon) s.horizon = *horizon;
  return s;
}

int cmd_run(const RunArgs& a) {
  const qmsr::Scenario s = load(a.scenario, a.seed, a.horizon);
  const auto [trajectory, result] =
      qmsr::run(s, {.strict = true, .audit_weights = a.audit, .record_trajectory = true, .stop_on_agreement = !a.full});
  if (!a.out.empty()) {
    std::ostringstream csv;
    qmsr::write_trajectory_csv(csv, trajectory);
    qmsr::write_file_atomically(a.out, csv.str());
  }
  std::cout << qmsr::run_verdict(result) << '\n';
  return kOk;
}

int cmd_montecarlo(const MonteCarloArgs& a) {
  const qmsr::Scenario s = load(a.scenario, a.seed);
  const qmsr::RunOptions options{.strict = true, .audit_weights = a.audit, .record_trajectory = false};
  const auto summary = a.serial ? qmsr::monte_carlo_serial(s, a.runs, options) : qmsr::monte_carlo(s, a.runs, options);
  qmsr::write_summary_table(std::cout, summary);
  if (!a.out.empty()) qmsr::write_file_atomically(a.out, qmsr::summary_json(summary) + "\n");
  return kOk;
}

int cmd_robustness(const RobustnessArgs& a) {
  const qmsr::DirectedGraph g = qmsr::load_graph(a.graph);
  if (g.size() > qmsr::kRobustnessWarnNodes) {
    std::cerr << "warning: exhaustive check on " << g.size() << " nodes may take a long time\n";
  }
  if (a.max) {
    std::cout << "max r = " << qmsr::max_r_robustness(g) << '\n';
    return kOk;
  }
  const auto report = qmsr::is_r_s_robust(g, a.r, a.s);
  std::cout << '(' << report.r << ',' << report.s << ")-robust: " << (report.holds ? "holds" : "fails") << '\n';
  if (report.witness) {
    std::cout << "witness S1 = " << qmsr::format_node_set(report.witness->first)
              << ", S2 = " << qmsr::format_node_set(report.witness->second) << '\n';
  }
  return kOk;
}

int cmd_validate(const std::string& path) {
  const qmsr::Scenario s = qmsr::parse_scenario(path);
  std::cout << path << ": ok (" << s.graph.size() << " agents, " << s.placement.malicious.size()
            << " malicious, horizon " << s.horizon << ")\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resilient quantized consensus (QW-MSR) simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Simulate one scenario and print the verdict");
  run->add_option("scenario", run_args.scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--out", run_args.out, "Trajectory CSV output path");
  run->add_option("--seed", run_args.seed, "Override the scenario seed");
  run->add_option("--horizon", run_args.horizon, "Override the scenario horizon")->check(CLI::NonNegativeNumber);
  run->add_flag("--full", run_args.full, "Run to the horizon even after agreement");
  run->add_flag("--audit", run_args.audit, "Check the extended weight matrix at every step");

  MonteCarloArgs mc_args;
  auto* mc = app.add_subcommand("montecarlo", "Run a batch of seeds and summarize");
  mc->add_option("scenario", mc_args.scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  mc->add_option("-n,--runs", mc_args.runs, "Number of seeds")->check(CLI::PositiveNumber);
  mc->add_option("-o,--out", mc_args.out, "JSON summary output path");
  mc->add_option("--seed", mc_args.seed, "First seed (default: scenario seed)");
  mc->add_flag("--serial", mc_args.serial, "Use the single-threaded reference");
  mc->add_flag("--audit", mc_args.audit, "Check the extended weight matrix at every step");

  RobustnessArgs rob_args;
  auto* rob = app.add_subcommand("robustness", "Exact (r,s)-robustness check of a graph file");
  rob->add_option("graph", rob_args.graph, "Graph file")->required()->check(CLI::ExistingFile);
  auto* r_opt = rob->add_option("--r", rob_args.r, "r");
  auto* s_opt = rob->add_option("--s", rob_args.s, "s (default 1)");
  auto* max_flag = rob->add_flag("--max", rob_args.max, "Report the largest r with (r,1)-robustness");
  max_flag->excludes(r_opt)->excludes(s_opt);

  std::string validate_path;
  auto* val = app.add_subcommand("validate", "Parse and validate a scenario file");
  val->add_option("scenario", validate_path, "Scenario file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (rob->parsed() && !rob_args.max && r_opt->count() == 0) {
    std::cerr << "robustness: give --r (and optionally --s) or --max\n";
    return kUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (mc->parsed()) return cmd_montecarlo(mc_args);
    if (rob->parsed()) return cmd_robustness(rob_args);
    return cmd_validate(validate_path);
  } catch (const qmsr::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const qmsr::ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return kContract;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const qmsr::ConfigError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
}
