#include "hyperpin/simulate.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hyperpin/errors.hpp"
#include "hyperpin/random.hpp"

namespace hyperpin {

namespace {

constexpr int kMaxDim = 16;
using Buffer = std::array<double, kMaxDim>;

long long step_count(double t_end, double step) { return std::max<long long>(1, std::llround(t_end / step)); }

}  // namespace

void SimConfig::validate() const {
  if (!(step > 0.0) || !(t_end > 0.0)) throw ConfigError("simulation needs step > 0 and t_end > 0");
  if (record_stride < 1) throw ConfigError("record_stride must be >= 1");
  if (model.dim < 1 || model.dim > kMaxDim) throw ConfigError("model dimension must be in [1, 16]");
  if (!model.field || !model.coupling) throw ConfigError("model needs a vector field and a coupling");
  if (initial_states.rows() != graph.size() || initial_states.cols() != model.dim) {
    throw SizeError("initial_states must be N x n");
  }
  if (pinner_init.size() != model.dim) throw SizeError("pinner_init must have the model dimension");
  if (pinning) {
    pinning->check_nodes(graph.size());
    if (!(pinning->kappa() >= 0.0)) throw ConfigError("kappa must be >= 0");
  }
}

double pinning_error_norm(const Eigen::MatrixXd& states, const Eigen::VectorXd& pinner) {
  return (states.rowwise() - pinner.transpose()).norm();
}

NetworkRhs::NetworkRhs(const DirectedHypergraph& graph, const std::optional<PinningConfig>& pinning,
                       const MsfModel& model)
    : graph_(&graph), pinning_(&pinning), model_(&model), nodes_(graph.size()), dim_(model.dim),
      head_edges_(graph.size()), pin_of_(graph.size(), -1) {
  const auto& edges = graph.edges();
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    for (NodeId h : edges[e].heads) head_edges_[h].push_back(e);
  }
  if (pinning) {
    for (int p = 0; p < static_cast<int>(pinning->size()); ++p) {
      for (NodeId h : pinning->edges()[p].heads) pin_of_[h] = p;
    }
  }
}

void NetworkRhs::edge_term(const Eigen::VectorXd& s, int e, double* out) const {
  const auto& edge = graph_->edges()[e];
  Buffer arg{}, g{};
  for (std::size_t k = 0; k < edge.tails.size(); ++k) {
    const double* x = s.data() + edge.tails[k] * dim_;
    for (int c = 0; c < dim_; ++c) arg[c] += edge.alpha[k] * x[c];
  }
  for (std::size_t k = 0; k < edge.heads.size(); ++k) {
    const double* x = s.data() + edge.heads[k] * dim_;
    for (int c = 0; c < dim_; ++c) arg[c] -= edge.beta[k] * x[c];
  }
  model_->coupling(std::span<const double>(arg.data(), dim_), std::span<double>(g.data(), dim_));
  for (int c = 0; c < dim_; ++c) out[c] = edge.sigma * g[c];
}

void NetworkRhs::pin_term(const Eigen::VectorXd& s, int p, double* out) const {
  const auto& pin = (*pinning_)->edges()[p];
  const double* xp = s.data() + nodes_ * dim_;
  Buffer arg{}, g{};
  for (int c = 0; c < dim_; ++c) arg[c] = xp[c];
  for (std::size_t k = 0; k < pin.heads.size(); ++k) {
    const double* x = s.data() + pin.heads[k] * dim_;
    for (int c = 0; c < dim_; ++c) arg[c] -= pin.beta[k] * x[c];
  }
  model_->coupling(std::span<const double>(arg.data(), dim_), std::span<double>(g.data(), dim_));
  const double kappa = (*pinning_)->kappa();
  for (int c = 0; c < dim_; ++c) out[c] = kappa * g[c];
}

void NetworkRhs::by_edges(const Eigen::VectorXd& s, Eigen::VectorXd& ds) const {
  for (int i = 0; i <= nodes_; ++i) {
    model_->field(std::span<const double>(s.data() + i * dim_, dim_), std::span<double>(ds.data() + i * dim_, dim_));
  }
  Buffer term{};
  const auto& edges = graph_->edges();
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    edge_term(s, e, term.data());
    for (NodeId h : edges[e].heads) {
      for (int c = 0; c < dim_; ++c) ds[h * dim_ + c] += term[c];
    }
  }
  if (*pinning_) {
    for (int p = 0; p < static_cast<int>((*pinning_)->size()); ++p) {
      pin_term(s, p, term.data());
      for (NodeId h : (*pinning_)->edges()[p].heads) {
        for (int c = 0; c < dim_; ++c) ds[h * dim_ + c] += term[c];
      }
    }
  }
}

void NetworkRhs::by_nodes(const Eigen::VectorXd& s, Eigen::VectorXd& ds) const {
  for_each_index(static_cast<std::size_t>(nodes_ + 1), Execution::Parallel, [&](std::size_t idx) {
    const int i = static_cast<int>(idx);
    double* out = ds.data() + i * dim_;
    model_->field(std::span<const double>(s.data() + i * dim_, dim_), std::span<double>(out, dim_));
    if (i == nodes_) return;
    Buffer term{};
    for (int e : head_edges_[i]) {
      edge_term(s, e, term.data());
      for (int c = 0; c < dim_; ++c) out[c] += term[c];
    }
    if (pin_of_[i] >= 0) {
      pin_term(s, pin_of_[i], term.data());
      for (int c = 0; c < dim_; ++c) out[c] += term[c];
    }
  });
}

void NetworkRhs::operator()(const Eigen::VectorXd& s, Eigen::VectorXd& ds, Execution exec) const {
  ds.resize(state_size());
  if (exec == Execution::Serial) {
    by_edges(s, ds);
  } else {
    by_nodes(s, ds);
  }
}

Trajectory integrate(const SimConfig& cfg) {
  cfg.validate();
  const int n = cfg.graph.size(), dim = cfg.model.dim;
  const NetworkRhs rhs(cfg.graph, cfg.pinning, cfg.model);
  const int size = rhs.state_size();
  Eigen::VectorXd s(size);
  for (int i = 0; i < n; ++i) s.segment(i * dim, dim) = cfg.initial_states.row(i).transpose();
  s.tail(dim) = cfg.pinner_init;

  Trajectory traj;
  auto record = [&](double t) {
    Eigen::MatrixXd x(n, dim);
    for (int i = 0; i < n; ++i) x.row(i) = s.segment(i * dim, dim).transpose();
    Eigen::VectorXd xp = s.tail(dim);
    traj.times.push_back(t);
    traj.error_norm.push_back(pinning_error_norm(x, xp));
    traj.states.push_back(std::move(x));
    traj.pinner.push_back(std::move(xp));
  };

  const double h = cfg.step;
  const long long total = step_count(cfg.t_end, h);
  Eigen::VectorXd k1(size), k2(size), k3(size), k4(size), tmp(size);
  record(0.0);
  for (long long k = 1; k <= total; ++k) {
    rhs(s, k1, cfg.exec);
    tmp = s + 0.5 * h * k1;
    rhs(tmp, k2, cfg.exec);
    tmp = s + 0.5 * h * k2;
    rhs(tmp, k3, cfg.exec);
    tmp = s + h * k3;
    rhs(tmp, k4, cfg.exec);
    s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double norm = s.norm();
    if (!std::isfinite(norm) || norm > kBlowupNorm) {
      throw BlowupError("state norm exceeded 1e12 at t=" + std::to_string(k * h), k * h);
    }
    if (k % cfg.record_stride == 0 || k == total) record(k * h);
  }
  return traj;
}

Eigen::MatrixXd index_initial_states(int n) {
  Eigen::MatrixXd x(n, 1);
  for (int i = 0; i < n; ++i) x(i, 0) = i + 1.0;
  return x;
}

Eigen::MatrixXd gaussian_initial_states(int n, int dim, double variance, std::uint64_t seed) {
  Rng rng(seed);
  const double sd = std::sqrt(variance);
  Eigen::MatrixXd x(n, dim);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < dim; ++c) x(i, c) = sd * standard_normal(rng);
  }
  return x;
}

Eigen::VectorXd settled_reference(const MsfModel& model, double transient, double step) {
  const int dim = model.dim;
  Eigen::VectorXd x = model.reference_init, k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  auto f = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
    model.field(std::span<const double>(in.data(), dim), std::span<double>(out.data(), dim));
  };
  const long long total = std::llround(transient / step);
  for (long long k = 0; k < total; ++k) {
    f(x, k1);
    tmp = x + 0.5 * step * k1;
    f(tmp, k2);
    tmp = x + 0.5 * step * k2;
    f(tmp, k3);
    tmp = x + step * k3;
    f(tmp, k4);
    x += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

LorenzExperimentReport run_lorenz_experiment(std::uint64_t seed, const LorenzExperimentSettings& settings,
                                             const MasterStability* msf) {
  LorenzExperimentReport report;
  report.seed = seed;
  const auto model = lorenz_arctan_model();
  std::optional<MasterStability> own;
  if (!msf) {
    own = MasterStability::from_model(model, settings.lyapunov);
    msf = &*own;
  }
  report.base_exponent = (*msf)(Complex(0.0, 0.0));

  ErParams params;
  params.n = settings.nodes;
  params.p = settings.p;
  params.max_order = settings.max_order;
  params.sigma = settings.sigma;
  const auto scc = giant_scc(er_hypergraph(params, seed));
  const int n = scc.sub.size();
  report.scc_size = n;

  std::vector<NodeId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 0);
  const PinningProblem problem(scc.sub, PinningConfig::singletons(nodes, settings.kappa), *msf);
  report.selection = greedy_select(problem, settings.exec);
  report.pinned = report.selection.cost;
  report.pinned_percent = 100.0 * report.pinned / n;
  report.lambda_max = report.selection.verdict.lambda_max();
  for (const auto& mu : spectrum(problem.laplacian()).values) {
    if ((*msf)(mu) > 0.0) ++report.uncontrolled_unstable;
  }

  const auto pins = problem.candidates().subset(report.selection.chosen).with_kappa(settings.kappa);
  report.lambda_max_at_kappa =
      controllability_verdict(*msf, spectrum(m_kappa(problem.laplacian(), pins, settings.kappa))).lambda_max();

  SimConfig sim;
  sim.graph = scc.sub;
  sim.pinning = pins;
  sim.model = model;
  sim.initial_states = gaussian_initial_states(n, model.dim, settings.init_variance, derive_seed(seed, 1));
  sim.pinner_init = settled_reference(model, 100.0, settings.step);
  sim.t_end = settings.t_end;
  sim.step = settings.step;
  sim.record_stride = settings.record_stride;
  sim.exec = settings.exec;
  try {
    report.trajectory = integrate(sim);
    report.error_initial = report.trajectory.error_norm.front();
    report.error_final = report.trajectory.error_norm.back();
    report.error_ratio = report.trajectory.error_ratio();
  } catch (const BlowupError&) {
    report.blowup = true;
    report.error_initial = pinning_error_norm(sim.initial_states, sim.pinner_init);
    report.error_final = report.error_ratio = std::numeric_limits<double>::infinity();
  }
  return report;
}

}  // namespace hyperpin
