#pragma once

// Experiment drivers behind the CLI subcommands. Each command reads an
// ExperimentConfig, writes its CSVs into the output directory and returns the
// lines to print; `failures` holds one machine-readable line per internal
// check that did not hold.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hyperpin/config.hpp"
#include "hyperpin/hypergraph.hpp"
#include "hyperpin/msf.hpp"
#include "hyperpin/parallel.hpp"
#include "hyperpin/select.hpp"
#include "hyperpin/simulate.hpp"

namespace hyperpin {

struct CommandOutput {
  std::vector<std::string> lines;
  std::vector<std::string> failures;
  std::vector<std::string> files;

  bool ok() const { return failures.empty(); }
};

// ---------------------------------------------------------------------------
// Building blocks

/// Ring, ER or file topology from [topology] with sigma from [dynamics].
DirectedHypergraph build_topology(const ExperimentConfig& cfg);
/// build_topology, reduced to its giant SCC for ER topologies.
DirectedHypergraph working_topology(const ExperimentConfig& cfg);
MsfModel build_model(const ExperimentConfig& cfg);
MasterStability build_msf(const ExperimentConfig& cfg);
LyapunovSettings build_lyapunov(const ExperimentConfig& cfg);
/// Candidate pinning edges: singletons over all nodes, or [selection] pins.
PinningConfig build_candidates(const ExperimentConfig& cfg, int n);
SimConfig build_simulation(const ExperimentConfig& cfg, const DirectedHypergraph& graph,
                           std::optional<PinningConfig> pinning);

void write_trajectory_csv(const std::string& prefix, const Trajectory& traj);

// ---------------------------------------------------------------------------
// table1: three-body ring, consensus, singleton candidates

struct Table1Row {
  int n = 0;
  int min = 0;
  int heuristic = 0;
  double random_mean = 0.0;
  double p_min = 0.0;     // P(random cost == min)
  double p_second = 0.0;  // P(random cost == min + 1)
  std::map<int, int> random_histogram;
};

Table1Row table1_row(int n, int replicates, std::uint64_t seed, Execution exec = Execution::Parallel,
                     RingOrientation orientation = RingOrientation::Centered);

// ---------------------------------------------------------------------------
// table2: giant SCC of ER hypergraphs, consensus, singleton candidates

struct Table2Options {
  int replicates = 100;
  int cap = 4;              // exhaustive cardinality cap
  bool exhaustive = true;   // skip the capped exhaustive search when false
  int candidate_cap = 0;    // forwarded to ErParams
  double sigma = 1.0;
};

struct Table2Cell {
  double p = 0.0;
  int o = 0;
  double mean_scc = 0.0;
  double min_pct = 0.0;        // NaN when the exhaustive search was skipped
  bool min_lower_bound = false;
  int min_solved = 0;          // replicates where the cap did not bind
  double greedy_pct = 0.0;
  double degree_pct = 0.0;
  double random_pct = 0.0;
};

Table2Cell table2_cell(double p, int o, std::uint64_t seed, const Table2Options& options,
                       Execution exec = Execution::Parallel);

// ---------------------------------------------------------------------------
// Subcommands

CommandOutput cmd_generate(const ExperimentConfig& cfg, const std::string& out_dir);
CommandOutput cmd_spectrum(const ExperimentConfig& cfg, const std::string& out_dir);
CommandOutput cmd_msf(const ExperimentConfig& cfg, const std::string& out_dir, Execution exec);
CommandOutput cmd_select(const ExperimentConfig& cfg, const std::string& out_dir, Execution exec);
CommandOutput cmd_simulate(const ExperimentConfig& cfg, const std::string& out_dir, Execution exec);
CommandOutput cmd_table1(const ExperimentConfig& cfg, const std::string& out_dir, Execution exec);
CommandOutput cmd_table2(const ExperimentConfig& cfg, const std::string& out_dir, Execution exec);
/// name in {fig2a, fig2b, fig3, fig4, fig6, lorenz}; otherwise UnknownExample.
CommandOutput cmd_example(const std::string& name, const ExperimentConfig& cfg, const std::string& out_dir,
                          Execution exec);
CommandOutput cmd_sweep10(const ExperimentConfig& cfg, const std::string& out_dir, Execution exec);

/// Writes cfg as resolved_config.ini into out_dir (created if needed).
std::string write_resolved_config(const ExperimentConfig& cfg, const std::string& out_dir);

}  // namespace hyperpin
