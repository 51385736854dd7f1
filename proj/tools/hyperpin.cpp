// hyperpin <subcommand> [--config FILE] [--seed S] [--jobs J] [--out DIR]
//
// Prints result lines on stdout. Every failed internal check is reported as
// one "FAIL <subcommand> <detail>" line and the exit code is nonzero.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hyperpin/config.hpp"
#include "hyperpin/errors.hpp"
#include "hyperpin/experiments.hpp"
#include "hyperpin/parallel.hpp"

int main(int argc, char** argv) {
  using namespace hyperpin;
  CLI::App app{"Pinning control of directed hypergraphs"};
  app.require_subcommand(1);

  std::string config_path, out_dir, example_name;
  long long seed = -1;
  int jobs = 0;
  app.add_option("--config", config_path, "Experiment configuration (INI)")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Override topology.seed");
  app.add_option("--jobs", jobs, "Worker threads (1 runs the serial kernels, 0 uses all cores)");
  app.add_option("--out", out_dir, "Override output.directory");

  const char* names[] = {"generate", "spectrum", "msf", "select", "simulate", "table1", "table2", "sweep10"};
  for (const char* name : names) app.add_subcommand(name)->fallthrough();
  auto* example = app.add_subcommand("example", "Figure data: fig2a, fig2b, fig3, fig4, fig6, lorenz");
  example->fallthrough();
  example->add_option("name", example_name)->required();

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : ExperimentConfig::load(config_path);
    if (seed >= 0) cfg.topology.seed = static_cast<std::uint64_t>(seed);
    if (!out_dir.empty()) cfg.output.directory = out_dir;
    const std::string dir = cfg.output.directory;
    Execution exec = Execution::Parallel;
    if (jobs == 1) {
      exec = Execution::Serial;
    } else if (jobs > 1) {
      set_threads(jobs);
    }

    CommandOutput out;
    if (command == "generate") {
      out = cmd_generate(cfg, dir);
    } else if (command == "spectrum") {
      out = cmd_spectrum(cfg, dir);
    } else if (command == "msf") {
      out = cmd_msf(cfg, dir, exec);
    } else if (command == "select") {
      out = cmd_select(cfg, dir, exec);
    } else if (command == "simulate") {
      out = cmd_simulate(cfg, dir, exec);
    } else if (command == "table1") {
      out = cmd_table1(cfg, dir, exec);
    } else if (command == "table2") {
      out = cmd_table2(cfg, dir, exec);
    } else if (command == "sweep10") {
      out = cmd_sweep10(cfg, dir, exec);
    } else {
      out = cmd_example(example_name, cfg, dir, exec);
    }
    write_resolved_config(cfg, dir);

    for (const auto& line : out.lines) std::cout << line << '\n';
    for (const auto& file : out.files) std::cout << "wrote " << file << '\n';
    for (const auto& failure : out.failures) std::cout << "FAIL " << command << ' ' << failure << '\n';
    return out.ok() ? 0 : 1;
  } catch (const Error& e) {
    std::cout << "FAIL " << command << " error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cout << "FAIL " << command << " unexpected: " << e.what() << '\n';
    return 3;
  }
}
