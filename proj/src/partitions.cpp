#include <algorithm>
#include <numeric>

#include "hyperpin/errors.hpp"
#include "hyperpin/select.hpp"
#include "selection_internal.hpp"

namespace hyperpin {

namespace {

constexpr int kMaxSweepNodes = 12;

void check_partition_size(int n) {
  if (n < 1 || n > kMaxSweepNodes) {
    throw SizeError("set partitions are enumerated for 1 <= n <= " + std::to_string(kMaxSweepNodes));
  }
}

// Advances a restricted-growth string; false after the last one.
bool next_rgs(std::vector<std::uint8_t>& a, std::vector<std::uint8_t>& prefix_max) {
  const int n = static_cast<int>(a.size());
  for (int i = n - 1; i >= 1; --i) {
    if (a[i] <= prefix_max[i - 1]) {
      ++a[i];
      std::uint8_t mx = std::max(prefix_max[i - 1], a[i]);
      prefix_max[i] = mx;
      for (int j = i + 1; j < n; ++j) {
        a[j] = 0;
        prefix_max[j] = mx;
      }
      return true;
    }
  }
  return false;
}

SweepRow sweep_one(const Eigen::MatrixXd& lap, const MasterStability& msf, const std::vector<std::uint8_t>& rgs,
                   std::uint64_t id) {
  SweepRow row;
  row.partition_id = id;
  const auto cfg = PinningConfig::homogeneous(partition_blocks(rgs));
  const CandidateReduction reduction(lap, cfg);
  const detail::SubsetOracle oracle{&reduction, &msf};
  std::vector<int> all(oracle.size());
  std::iota(all.begin(), all.end(), 0);
  if (!oracle.feasible(all)) return row;
  row.feasible = true;
  const auto greedy = detail::greedy(oracle, Execution::Serial);
  row.greedy_cost = static_cast<int>(greedy.chosen.size());
  const auto better = detail::first_feasible_subset(oracle, 0, row.greedy_cost - 1, Execution::Serial);
  row.min_cost = better ? static_cast<int>(better->size()) : row.greedy_cost;
  return row;
}

void tally(SweepReport& report) {
  report.total = report.rows.size();
  for (const auto& row : report.rows) {
    if (!row.feasible) continue;
    ++report.feasible;
    if (row.greedy_cost == row.min_cost) ++report.greedy_optimal;
    report.max_excess = std::max(report.max_excess, row.greedy_cost - row.min_cost);
  }
}

}  // namespace

std::uint64_t bell_number(int n) {
  if (n < 0 || n > 25) throw SizeError("bell_number supports 0 <= n <= 25");
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

void for_each_restricted_growth_string(int n,
                                       const std::function<void(const std::vector<std::uint8_t>&)>& visit) {
  check_partition_size(n);
  std::vector<std::uint8_t> a(n, 0), prefix_max(n, 0);
  do {
    visit(a);
  } while (next_rgs(a, prefix_max));
}

std::vector<std::vector<std::uint8_t>> restricted_growth_strings(int n) {
  std::vector<std::vector<std::uint8_t>> out;
  out.reserve(bell_number(n));
  for_each_restricted_growth_string(n, [&](const std::vector<std::uint8_t>& a) { out.push_back(a); });
  return out;
}

std::vector<std::vector<NodeId>> partition_blocks(const std::vector<std::uint8_t>& rgs) {
  std::vector<std::vector<NodeId>> blocks;
  for (std::size_t i = 0; i < rgs.size(); ++i) {
    if (rgs[i] > blocks.size()) throw Error("partition_blocks: not a restricted-growth string");
    if (rgs[i] == blocks.size()) blocks.emplace_back();
    blocks[rgs[i]].push_back(static_cast<NodeId>(i));
  }
  return blocks;
}

SweepReport partition_sweep(const DirectedHypergraph& graph, const MasterStability& msf, Execution exec) {
  check_partition_size(graph.size());
  const auto lap = laplacian(graph);
  const auto all = restricted_growth_strings(graph.size());
  SweepReport report;
  report.rows.resize(all.size());
  for_each_index(all.size(), exec, [&](std::size_t k) { report.rows[k] = sweep_one(lap, msf, all[k], k); });
  tally(report);
  return report;
}

SweepReport partition_sweep_reference(const DirectedHypergraph& graph, const MasterStability& msf) {
  check_partition_size(graph.size());
  SweepReport report;
  std::uint64_t id = 0;
  for_each_restricted_growth_string(graph.size(), [&](const std::vector<std::uint8_t>& rgs) {
    SweepRow row;
    row.partition_id = id++;
    PinningProblem problem(graph, PinningConfig::homogeneous(partition_blocks(rgs)), msf);
    try {
      row.greedy_cost = greedy_select(problem, Execution::Serial).cost;
      row.min_cost = exhaustive_min(problem, {}, Execution::Serial).cost;
      row.feasible = true;
    } catch (const InfeasibleError&) {
      row.greedy_cost = row.min_cost = 0;
    }
    report.rows.push_back(row);
  });
  tally(report);
  return report;
}

}  // namespace hyperpin
