#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "hyperpin/hypergraph.hpp"
#include "hyperpin/msf.hpp"
#include "hyperpin/parallel.hpp"
#include "hyperpin/select.hpp"
#include "hyperpin/spectral.hpp"

namespace hyperpin {

inline constexpr double kBlowupNorm = 1e12;

struct SimConfig {
  DirectedHypergraph graph;
  std::optional<PinningConfig> pinning;  // gain is pinning->kappa()
  MsfModel model;
  Eigen::MatrixXd initial_states;  // N x n
  Eigen::VectorXd pinner_init;     // n
  double t_end = 50.0;
  double step = 1e-2;
  int record_stride = 1;
  Execution exec = Execution::Serial;

  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::MatrixXd> states;  // N x n per recorded time
  std::vector<Eigen::VectorXd> pinner;
  std::vector<double> error_norm;

  double error_ratio() const { return error_norm.back() / error_norm.front(); }
};

/// ||e|| with e_i = x_i - x_p stacked over nodes.
double pinning_error_norm(const Eigen::MatrixXd& states, const Eigen::VectorXd& pinner);

/// Right-hand side of the network plus pinner, on the state stacked as
/// [x_0; ...; x_{N-1}; x_p]. Each node sums f(x_i), then its hyperedge terms
/// in edge order, then its pinning term, whatever the execution mode.
class NetworkRhs {
 public:
  NetworkRhs(const DirectedHypergraph& graph, const std::optional<PinningConfig>& pinning, const MsfModel& model);

  int state_size() const { return (nodes_ + 1) * dim_; }
  void operator()(const Eigen::VectorXd& s, Eigen::VectorXd& ds, Execution exec) const;

 private:
  // Serial reference: loops over hyperedges and scatters into the heads.
  void by_edges(const Eigen::VectorXd& s, Eigen::VectorXd& ds) const;
  // Gathers per node over the edges listing it as a head; parallel over nodes.
  void by_nodes(const Eigen::VectorXd& s, Eigen::VectorXd& ds) const;
  void edge_term(const Eigen::VectorXd& s, int e, double* out) const;
  void pin_term(const Eigen::VectorXd& s, int p, double* out) const;

  const DirectedHypergraph* graph_;
  const std::optional<PinningConfig>* pinning_;
  const MsfModel* model_;
  int nodes_;
  int dim_;
  std::vector<std::vector<int>> head_edges_;  // ascending edge ids per node
  std::vector<int> pin_of_;                   // pinning edge per node, -1 if none
};

/// Fixed-step RK4. Throws BlowupError when the stacked state norm exceeds
/// kBlowupNorm or turns non-finite.
Trajectory integrate(const SimConfig& cfg);

/// Initial states x_i(0) = i + 1 (scalar models), the convention of the
/// consensus examples.
Eigen::MatrixXd index_initial_states(int n);

/// Componentwise Gaussian initial states with mean 0 and the given variance.
Eigen::MatrixXd gaussian_initial_states(int n, int dim, double variance, std::uint64_t seed);

/// Pinner start on the attractor: reference_init integrated for `transient`.
Eigen::VectorXd settled_reference(const MsfModel& model, double transient, double step);

// ---------------------------------------------------------------------------

struct LorenzExperimentSettings {
  int nodes = 100;
  double p = 0.01;
  int max_order = 4;
  double sigma = 30.0;
  double kappa = 60.0;
  double init_variance = 100.0;
  double t_end = 100.0;
  double step = 1e-3;
  int record_stride = 100;
  LyapunovSettings lyapunov = LyapunovSettings::lorenz();
  Execution exec = Execution::Parallel;
};

struct LorenzExperimentReport {
  std::uint64_t seed = 0;
  int scc_size = 0;
  int pinned = 0;
  double pinned_percent = 0.0;
  double lambda_max = 0.0;      // on the reduced block of the chosen set
  double lambda_max_at_kappa = 0.0;  // on M(kappa) itself, the post-hoc gain check
  double base_exponent = 0.0;   // Lambda(0)
  int uncontrolled_unstable = 0;  // eigenvalues of L with Lambda > 0
  double error_initial = 0.0;
  double error_final = 0.0;
  double error_ratio = 0.0;
  bool blowup = false;
  SelectionResult selection;
  Trajectory trajectory;
};

/// ER hypergraph, giant SCC, greedy selection under the Lorenz/arctan master
/// stability function, then a pinned simulation from Gaussian initial states.
/// `msf` may be passed in to reuse its base exponent across seeds.
LorenzExperimentReport run_lorenz_experiment(std::uint64_t seed, const LorenzExperimentSettings& settings = {},
                                             const MasterStability* msf = nullptr);

}  // namespace hyperpin
