#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cbd/commands.hpp"

namespace {

int emit(const cbd::cli::CommandResult& result) {
  std::cout << result.output;
  std::cerr << result.error;
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contextuality analysis of content-context systems of binary random variables"};
  app.require_subcommand(1);

  std::string file;
  bool machine = false;

  auto* analyze = app.add_subcommand("analyze", "Decide contextuality of a system file");
  cbd::cli::AnalyzeOptions analyze_options;
  const std::map<std::string, cbd::cli::AnalysisMethod> methods{{"auto", cbd::cli::AnalysisMethod::automatic},
                                                                {"cyclic", cbd::cli::AnalysisMethod::cyclic},
                                                                {"lp", cbd::cli::AnalysisMethod::lp}};
  analyze->add_option("file", file, "System document")->required();
  analyze->add_option("--method", analyze_options.method, "auto, cyclic or lp")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
  analyze->add_flag("--witness", analyze_options.witness, "Print a multimaximal coupling when one exists");
  analyze->add_flag("--machine", machine, "JSON output");
  analyze->add_option("--max-variables", analyze_options.lp.max_variables, "Largest system the LP accepts");

  auto* reduce = app.add_subcommand("reduce", "Drop deterministic variables and small contexts");
  cbd::cli::ReduceOptions reduce_options;
  std::string reduce_output;
  reduce->add_option("file", file, "System document")->required();
  reduce->add_option("-o,--output", reduce_output, "Write the reduced document to this file");
  reduce->add_flag("--machine", machine, "JSON output");

  auto* double_slit = app.add_subcommand("double-slit", "Closed-form analysis of a double-slit system");
  cbd::cli::DoubleSlitOptions slit_options;
  double_slit->add_option("--p", slit_options.p, "Left slit, right closed");
  double_slit->add_option("--q", slit_options.q, "Right slit, left closed");
  double_slit->add_option("--pp", slit_options.p_prime, "Left slit, both open");
  double_slit->add_option("--qp", slit_options.q_prime, "Right slit, both open");
  double_slit->add_option("--rp", slit_options.r_prime, "Both slits, both open");
  double_slit->add_flag("--emit-system", slit_options.emit_system, "Also print the system document");
  double_slit->add_flag("--machine", machine, "JSON output");

  auto* sweep = app.add_subcommand("sweep", "Check the double-slit closed form over samples and a grid");
  cbd::cli::SweepOptions sweep_options;
  std::string grid_step;
  sweep->add_option("--samples", sweep_options.samples, "Random dyadic parameter tuples");
  sweep->add_option("--seed", sweep_options.seed, "Sampler seed");
  sweep->add_option("--grid-step", grid_step, "Lattice step such as 1/8");
  sweep->add_option("--lp-subsample", sweep_options.lp_subsample, "Cross-check the first M points against the LP");
  sweep->add_flag("--machine", machine, "JSON output");

  auto* demo = app.add_subcommand("demo", "Analyze a bundled system");
  std::string demo_name;
  demo->add_option("name", demo_name, "double-slit-paper, triple-slit-paper or pr-box")->required();
  demo->add_flag("--machine", machine, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cbd::cli::exit_input_error;
  }

  if (*analyze) {
    analyze_options.machine = machine;
    return emit(cbd::cli::cmd_analyze(file, analyze_options));
  }
  if (*reduce) {
    reduce_options.machine = machine;
    if (!reduce_output.empty()) reduce_options.output_path = reduce_output;
    return emit(cbd::cli::cmd_reduce(file, reduce_options));
  }
  if (*double_slit) {
    slit_options.machine = machine;
    return emit(cbd::cli::cmd_double_slit(slit_options));
  }
  if (*sweep) {
    sweep_options.machine = machine;
    if (!grid_step.empty()) sweep_options.grid_step = grid_step;
    return emit(cbd::cli::cmd_sweep(sweep_options));
  }
  return emit(cbd::cli::cmd_demo(demo_name, machine));
}
