// Command-line front end: seeded minimization experiments and Sobol index
// estimation, both emitting CSV. Exit codes: 0 success, 1 runtime failure,
// 2 invalid configuration.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sobolopt/experiments.hpp"

namespace {

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);  // binary keeps bytes identical across platforms
  if (!file)
    throw std::runtime_error("cannot open output file: " + path);
  return file;
}

int cmd_run(const std::string& spec_path, const std::string& preset,
            const std::string& seeds, int budget, int degree,
            const std::string& out) {
  using namespace sobolopt;
  ExperimentSpec spec;
  if (!spec_path.empty()) spec = load_spec(spec_path);

  if (!preset.empty()) {
    if (preset.size() != 1)
      throw ConfigError("flag --preset: expected one of A, B, C, D, got \"" +
                        preset + "\"");
    try {
      experiment_preset(preset[0]);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("flag --preset: ") + e.what());
    }
    spec.preset = preset[0];
    spec.inline_constraints.reset();
    spec.from_saltelli.reset();
  } else if (spec_path.empty() && spec.preset == 0) {
    spec.preset = 'A';  // bare `run` = unconstrained benchmark
  }
  if (!seeds.empty()) spec.seeds = parse_seed_list(seeds);
  if (budget > 0) spec.budget_solves = budget;
  if (degree > 0) {
    try {
      BasisConfig{spec.dim == 0 ? 3 : spec.dim, degree}.validate();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("flag --degree: ") + e.what());
    }
    spec.degree = degree;
  }
  if (!out.empty()) spec.out = out;
  if (spec.dim == 0) spec.dim = make_objective(spec.objective).dim;

  const auto rows = run_rows(spec);
  std::ofstream file;
  std::ostream& os = open_output(file, spec.out);
  write_run_csv(os, spec, rows);
  os.flush();
  return 0;
}

int cmd_sensitivity(const std::string& objective, int n_base,
                    std::uint64_t seed, const std::string& out) {
  using namespace sobolopt;
  TestObjective obj;
  try {
    obj = make_objective(objective);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("flag --objective: ") + e.what());
  }
  if (n_base < 2) throw ConfigError("flag --n-base: must be >= 2");

  Rng rng(seed);
  const SensitivityEstimate est = estimate(obj.canonical, obj.dim, n_base, rng);
  std::ofstream file;
  std::ostream& os = open_output(file, out);
  write_sensitivity_csv(os, est);
  os.flush();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derivative-free minimization with Sobol-constrained certification"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand(
      "run", "Run seeded minimization experiments, emit per-seed CSV rows");
  std::string spec_path, preset, seeds, run_out;
  int budget = 0, degree = 0;
  run_cmd->add_option("--spec", spec_path, "JSON experiment description file");
  run_cmd->add_option("--preset", preset, "constraint preset: A, B, C or D");
  run_cmd->add_option("--seeds", seeds,
                      "seeds as \"a..b\" or comma-separated list");
  run_cmd->add_option("--budget", budget, "certification solve budget");
  run_cmd->add_option("--degree", degree, "per-coordinate polynomial degree");
  run_cmd->add_option("--out", run_out, "output CSV path (default stdout)");

  auto* sens_cmd = app.add_subcommand(
      "sensitivity", "Estimate first-order and total Sobol indices, emit CSV");
  std::string objective = "rosenbrock3", sens_out;
  int n_base = 1 << 15;
  std::uint64_t seed = 0;
  sens_cmd->add_option("--objective", objective,
                       "objective id (add2, x1only, prod12, rosenbrock3)");
  sens_cmd->add_option("--n-base", n_base, "base sample size per matrix");
  sens_cmd->add_option("--seed", seed, "sampling seed");
  sens_cmd->add_option("--out", sens_out, "output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run_cmd->parsed())
      return cmd_run(spec_path, preset, seeds, budget, degree, run_out);
    return cmd_sensitivity(objective, n_base, seed, sens_out);
  } catch (const sobolopt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
