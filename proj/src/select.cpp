#include "hyperpin/select.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "hyperpin/errors.hpp"
#include "hyperpin/random.hpp"
#include "selection_internal.hpp"

namespace hyperpin {

namespace detail {

ControllabilityVerdict SubsetOracle::verdict(std::span<const int> chosen) const {
  return controllability_verdict(*msf, reduction->reduced_spectrum(chosen));
}

bool SubsetOracle::feasible(std::span<const int> chosen) const {
  const auto spec = reduction->reduced_spectrum(chosen);
  const auto lambda = evaluate_msf(*msf, spec.values, Execution::Serial);
  return std::all_of(lambda.begin(), lambda.end(), [](double l) { return l < -kMsfMargin; });
}

double SubsetOracle::score(std::span<const int> chosen) const {
  const auto spec = reduction->reduced_spectrum(chosen);
  const auto lambda = evaluate_msf(*msf, spec.values, Execution::Serial);
  double j = 0.0;
  for (double l : lambda) {
    if (std::isnan(l)) return std::numeric_limits<double>::infinity();
    if (!(l < -kMsfMargin)) j += l + 1.0;
  }
  return j;
}

std::vector<double> score_remaining(const SubsetOracle& oracle, const std::vector<int>& chosen, Execution exec) {
  const int m = oracle.size();
  std::vector<char> taken(m, 0);
  for (int c : chosen) taken[c] = 1;
  std::vector<int> remaining;
  for (int i = 0; i < m; ++i) {
    if (!taken[i]) remaining.push_back(i);
  }
  std::vector<double> scores(m, std::numeric_limits<double>::quiet_NaN());
  for_each_index(remaining.size(), exec, [&](std::size_t k) {
    std::vector<int> trial = chosen;
    trial.push_back(remaining[k]);
    scores[remaining[k]] = oracle.score(trial);
  });
  return scores;
}

GreedyOutcome greedy(const SubsetOracle& oracle, Execution exec) {
  GreedyOutcome out;
  const int m = oracle.size();
  while (static_cast<int>(out.chosen.size()) < m) {
    SelectionStep step;
    step.scores = score_remaining(oracle, out.chosen, exec);
    int best = -1;
    for (int i = 0; i < m; ++i) {
      if (std::isnan(step.scores[i])) continue;
      if (best < 0 || step.scores[i] < step.scores[best] - kScoreTieTolerance) best = i;
    }
    step.chosen = best;
    const double best_score = step.scores[best];
    out.chosen.push_back(best);
    out.iterations.push_back(std::move(step));
    if (best_score == 0.0) return out;
  }
  throw ExhaustedError("greedy selection added every candidate without reaching J = 0");
}

bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

std::optional<std::vector<int>> first_feasible_subset(const SubsetOracle& oracle, int k_from, int k_to,
                                                      Execution exec) {
  const int m = oracle.size();
  k_to = std::min(k_to, m);
  const std::size_t batch_size =
      exec == Execution::Serial ? 1 : static_cast<std::size_t>(256) * std::max(1, max_threads());
  for (int k = std::max(0, k_from); k <= k_to; ++k) {
    std::vector<int> combo(k);
    std::iota(combo.begin(), combo.end(), 0);
    bool more = true;
    std::vector<std::vector<int>> batch;
    std::vector<char> ok;
    while (more) {
      batch.clear();
      while (more && batch.size() < batch_size) {
        batch.push_back(combo);
        more = next_combination(combo, m);
      }
      ok.assign(batch.size(), 0);
      for_each_index(batch.size(), exec, [&](std::size_t b) { ok[b] = oracle.feasible(batch[b]); });
      for (std::size_t b = 0; b < batch.size(); ++b) {
        if (ok[b]) return batch[b];
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

detail::SubsetOracle oracle_of(const PinningProblem& p) { return {&p.reduction(), &p.msf()}; }

SelectionResult finish(const PinningProblem& problem, std::string method, std::vector<int> chosen,
                       std::chrono::steady_clock::time_point start) {
  SelectionResult r;
  r.method = std::move(method);
  r.chosen = std::move(chosen);
  r.cost = static_cast<int>(r.chosen.size());
  r.verdict = problem.verdict(r.chosen);
  r.wall_time_ms = elapsed_ms(start);
  return r;
}

// Adds candidates in the given order until the prefix is feasible.
SelectionResult sequential(const PinningProblem& problem, std::string method, const std::vector<int>& order,
                           std::chrono::steady_clock::time_point start) {
  const auto oracle = oracle_of(problem);
  std::vector<int> chosen;
  for (int c : order) {
    chosen.push_back(c);
    if (oracle.feasible(chosen)) return finish(problem, std::move(method), std::move(chosen), start);
  }
  throw ExhaustedError(method + " selection added every candidate without becoming feasible");
}

}  // namespace

PinningProblem::PinningProblem(DirectedHypergraph graph, PinningConfig candidates, MasterStability msf)
    : graph_(std::move(graph)), candidates_(std::move(candidates)), msf_(std::move(msf)) {
  candidates_.check_nodes(graph_.size());
  laplacian_ = hyperpin::laplacian(graph_);
  reduction_ = CandidateReduction(laplacian_, candidates_);
}

ControllabilityVerdict PinningProblem::verdict(std::span<const int> chosen) const {
  return oracle_of(*this).verdict(chosen);
}

double PinningProblem::score(std::span<const int> chosen) const { return oracle_of(*this).score(chosen); }

void PinningProblem::precheck() const {
  std::vector<int> all(candidate_count());
  std::iota(all.begin(), all.end(), 0);
  if (!oracle_of(*this).feasible(all)) {
    throw InfeasibleError("selecting every candidate pinning edge is not feasible");
  }
}

std::vector<double> score_candidates(const PinningProblem& problem, const std::vector<int>& chosen,
                                     Execution exec) {
  return detail::score_remaining(oracle_of(problem), chosen, exec);
}

SelectionResult greedy_select(const PinningProblem& problem, Execution exec) {
  const auto start = std::chrono::steady_clock::now();
  problem.precheck();
  auto outcome = detail::greedy(oracle_of(problem), exec);
  auto r = finish(problem, "greedy", std::move(outcome.chosen), start);
  r.iterations = std::move(outcome.iterations);
  return r;
}

SelectionResult exhaustive_min(const PinningProblem& problem, const ExhaustiveOptions& options, Execution exec) {
  const auto start = std::chrono::steady_clock::now();
  problem.precheck();
  const auto oracle = oracle_of(problem);
  const int m = problem.candidate_count();
  int limit = m;
  if (options.max_cardinality) limit = std::min(limit, std::max(0, *options.max_cardinality));
  if (options.incumbent) {
    if (!oracle.feasible(*options.incumbent)) throw Error("exhaustive_min: incumbent is not feasible");
    limit = std::min(limit, static_cast<int>(options.incumbent->size()) - 1);
  }
  if (auto found = detail::first_feasible_subset(oracle, 0, limit, exec)) {
    return finish(problem, "exhaustive", std::move(*found), start);
  }
  if (options.incumbent && static_cast<int>(options.incumbent->size()) - 1 <= limit) {
    auto inc = *options.incumbent;
    std::sort(inc.begin(), inc.end());
    return finish(problem, "exhaustive", std::move(inc), start);
  }
  SelectionResult r;
  r.method = "exhaustive";
  r.cost = limit + 1;
  r.lower_bound = true;
  r.verdict.feasible = false;
  r.wall_time_ms = elapsed_ms(start);
  return r;
}

SelectionResult random_select(const PinningProblem& problem, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  problem.precheck();
  std::vector<int> order(problem.candidate_count());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  shuffle(order, rng);
  return sequential(problem, "random", order, start);
}

SelectionResult degree_select(const PinningProblem& problem) {
  const auto start = std::chrono::steady_clock::now();
  if (!problem.candidates().all_singletons()) throw ConfigError("degree_select needs singleton candidates");
  problem.precheck();
  const auto deg = degrees(problem.graph());
  std::vector<int> order(problem.candidate_count());
  std::iota(order.begin(), order.end(), 0);
  auto node = [&](int c) { return problem.candidates().edges()[c].heads.front(); };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const int da = deg[node(a)].delta(), db = deg[node(b)].delta();
    if (da != db) return da > db;
    return node(a) < node(b);
  });
  return sequential(problem, "degree", order, start);
}

std::string format_chosen_sets(const PinningProblem& problem, const std::vector<int>& chosen) {
  std::ostringstream out;
  for (std::size_t k = 0; k < chosen.size(); ++k) {
    if (k) out << ' ';
    out << '{';
    const auto& heads = problem.candidates().edges()[chosen[k]].heads;
    for (std::size_t h = 0; h < heads.size(); ++h) {
      if (h) out << ' ';
      out << heads[h];
    }
    out << '}';
  }
  return out.str();
}

}  // namespace hyperpin
