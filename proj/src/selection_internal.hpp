#pragma once

// Selection kernels shared by PinningProblem and the partition sweep. They
// work on a CandidateReduction directly so that the sweep does not have to
// build a full PinningProblem per partition.

#include <optional>
#include <span>
#include <vector>

#include "hyperpin/msf.hpp"
#include "hyperpin/parallel.hpp"
#include "hyperpin/select.hpp"
#include "hyperpin/spectral.hpp"

namespace hyperpin::detail {

struct SubsetOracle {
  const CandidateReduction* reduction;
  const MasterStability* msf;

  int size() const { return reduction->candidate_count(); }
  ControllabilityVerdict verdict(std::span<const int> chosen) const;
  bool feasible(std::span<const int> chosen) const;
  double score(std::span<const int> chosen) const;
};

std::vector<double> score_remaining(const SubsetOracle& oracle, const std::vector<int>& chosen, Execution exec);

struct GreedyOutcome {
  std::vector<int> chosen;
  std::vector<SelectionStep> iterations;
};

/// Caller guarantees that the full candidate set is feasible.
GreedyOutcome greedy(const SubsetOracle& oracle, Execution exec);

/// First feasible subset with cardinality in [k_from, k_to], or nullopt.
std::optional<std::vector<int>> first_feasible_subset(const SubsetOracle& oracle, int k_from, int k_to,
                                                      Execution exec);

/// Advances `c` (sorted indices into [0, n)) to the next combination in
/// lexicographic order; false after the last one.
bool next_combination(std::vector<int>& c, int n);

}  // namespace hyperpin::detail
