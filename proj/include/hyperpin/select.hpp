#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hyperpin/hypergraph.hpp"
#include "hyperpin/msf.hpp"
#include "hyperpin/parallel.hpp"
#include "hyperpin/spectral.hpp"

namespace hyperpin {

// Two J scores closer than this are a tie; the lower candidate index wins.
inline constexpr double kScoreTieTolerance = 1e-9;

/// Minimal-measurement problem: choose the fewest candidate pinning edges
/// whose reduced block is stable under the master stability function.
class PinningProblem {
 public:
  PinningProblem(DirectedHypergraph graph, PinningConfig candidates, MasterStability msf);

  const DirectedHypergraph& graph() const { return graph_; }
  const PinningConfig& candidates() const { return candidates_; }
  const MasterStability& msf() const { return msf_; }
  const Eigen::MatrixXd& laplacian() const { return laplacian_; }
  const CandidateReduction& reduction() const { return reduction_; }
  int candidate_count() const { return static_cast<int>(candidates_.size()); }

  /// Reduced spectrum and verdict for a subset of candidate indices.
  Spectrum reduced_spectrum(std::span<const int> chosen) const { return reduction_.reduced_spectrum(chosen); }
  ControllabilityVerdict verdict(std::span<const int> chosen) const;
  bool feasible(std::span<const int> chosen) const { return verdict(chosen).feasible; }

  /// J = sum of Lambda over the unstable eigenvalues (Lambda >= -margin) plus
  /// their count. Zero exactly when `chosen` is feasible.
  double score(std::span<const int> chosen) const;

  /// Throws InfeasibleError unless selecting every candidate is feasible.
  void precheck() const;

 private:
  DirectedHypergraph graph_;
  PinningConfig candidates_;
  MasterStability msf_;
  Eigen::MatrixXd laplacian_;
  CandidateReduction reduction_;
};

struct SelectionStep {
  std::vector<double> scores;  // per candidate; NaN for ones already chosen
  int chosen = -1;
};

struct SelectionResult {
  std::string method;
  std::vector<int> chosen;  // candidate indices in selection order
  std::vector<SelectionStep> iterations;
  ControllabilityVerdict verdict;
  int cost = 0;
  // Set by exhaustive_min when the cardinality cap bound before a feasible
  // subset was found: cost is then only a lower bound (cap + 1).
  bool lower_bound = false;
  double wall_time_ms = 0.0;
};

/// J score of chosen + {i} for every remaining candidate i.
std::vector<double> score_candidates(const PinningProblem& problem, const std::vector<int>& chosen,
                                     Execution exec = Execution::Parallel);

/// Greedy heuristic: repeatedly add the candidate with the smallest J score
/// until that score is zero.
SelectionResult greedy_select(const PinningProblem& problem, Execution exec = Execution::Parallel);

struct ExhaustiveOptions {
  std::optional<int> max_cardinality;
  // A known feasible subset (e.g. the greedy result); cardinalities at or
  // above its size are not enumerated.
  std::optional<std::vector<int>> incumbent;
};

/// Smallest feasible subset: cardinalities in increasing order, combinations
/// in lexicographic order, first feasible one wins.
SelectionResult exhaustive_min(const PinningProblem& problem, const ExhaustiveOptions& options = {},
                               Execution exec = Execution::Parallel);

/// Adds uniformly random unchosen candidates until feasible.
SelectionResult random_select(const PinningProblem& problem, std::uint64_t seed);

/// Node-level baseline for singleton candidates: add nodes by decreasing
/// d_out - d_in (ties by node id) until feasible.
SelectionResult degree_select(const PinningProblem& problem);

/// Comma-free rendering of chosen head sets, e.g. "{0 1} {4}".
std::string format_chosen_sets(const PinningProblem& problem, const std::vector<int>& chosen);

// ---------------------------------------------------------------------------
// Set partitions

/// Number of set partitions of n elements.
std::uint64_t bell_number(int n);

/// All restricted-growth strings of length n in lexicographic order
/// (a[0] = 0, a[i] <= 1 + max(a[0..i-1])).
std::vector<std::vector<std::uint8_t>> restricted_growth_strings(int n);

/// Visits restricted-growth strings in lexicographic order without storing them.
void for_each_restricted_growth_string(int n, const std::function<void(const std::vector<std::uint8_t>&)>& visit);

/// Blocks of the partition encoded by a restricted-growth string.
std::vector<std::vector<NodeId>> partition_blocks(const std::vector<std::uint8_t>& rgs);

struct SweepRow {
  std::uint64_t partition_id = 0;
  bool feasible = false;
  int min_cost = 0;     // 0 when infeasible
  int greedy_cost = 0;  // 0 when infeasible
};

struct SweepReport {
  std::uint64_t total = 0;
  std::uint64_t feasible = 0;
  std::uint64_t greedy_optimal = 0;
  int max_excess = 0;
  std::vector<SweepRow> rows;

  double optimal_fraction() const { return feasible ? static_cast<double>(greedy_optimal) / feasible : 0.0; }
};

/// Every set partition of the node set as a candidate configuration
/// (homogeneous head weights). Feasible configurations get an exhaustive and
/// a greedy cost. Rows are in partition enumeration order.
SweepReport partition_sweep(const DirectedHypergraph& graph, const MasterStability& msf,
                            Execution exec = Execution::Parallel);

/// Straightforward single-threaded implementation kept as the reference for
/// partition_sweep.
SweepReport partition_sweep_reference(const DirectedHypergraph& graph, const MasterStability& msf);

}  // namespace hyperpin
