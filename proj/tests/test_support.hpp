#pragma once

// Random instances and small independent oracles shared by the unit tests and
// the acceptance binary.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "hyperpin/hypergraph.hpp"
#include "hyperpin/random.hpp"
#include "hyperpin/spectral.hpp"

namespace hyperpin::testing {

inline std::vector<double> random_simplex(Rng& rng, std::size_t k) {
  std::vector<double> w(k);
  double total = 0.0;
  for (auto& x : w) {
    x = 0.2 + uniform01(rng);
    total += x;
  }
  for (auto& x : w) x /= total;
  // Absorb rounding so the sum is 1 to machine precision.
  w.back() = 1.0 - std::accumulate(w.begin(), w.end() - 1, 0.0);
  return w;
}

/// Random hypergraph with `edges` hyperedges of order 2..max_order, random
/// positive weights and sigma in [0.5, 2]. Duplicate (tails, heads) pairs are
/// skipped, so the edge count can come out smaller.
inline DirectedHypergraph random_hypergraph(Rng& rng, int n, int edges, int max_order) {
  std::vector<DirectedHyperedge> out;
  std::set<std::pair<std::vector<NodeId>, std::vector<NodeId>>> seen;
  for (int e = 0; e < edges; ++e) {
    const int order = 2 + static_cast<int>(uniform_index(rng, std::min(max_order, n) - 1));
    std::vector<NodeId> nodes(n);
    std::iota(nodes.begin(), nodes.end(), 0);
    shuffle(nodes, rng);
    nodes.resize(order);
    const int tails = 1 + static_cast<int>(uniform_index(rng, order - 1));
    DirectedHyperedge edge;
    edge.tails.assign(nodes.begin(), nodes.begin() + tails);
    edge.heads.assign(nodes.begin() + tails, nodes.end());
    std::sort(edge.tails.begin(), edge.tails.end());
    std::sort(edge.heads.begin(), edge.heads.end());
    if (!seen.insert({edge.tails, edge.heads}).second) continue;
    edge.alpha = random_simplex(rng, edge.tails.size());
    edge.beta = random_simplex(rng, edge.heads.size());
    edge.sigma = 0.5 + 1.5 * uniform01(rng);
    out.push_back(std::move(edge));
  }
  return DirectedHypergraph::build(n, std::move(out));
}

/// Random pinning configuration: m disjoint head sets with random weights.
inline PinningConfig random_pinning(Rng& rng, int n, double kappa = 1.0) {
  std::vector<NodeId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 0);
  shuffle(nodes, rng);
  const int pinned = 1 + static_cast<int>(uniform_index(rng, n - 1));
  std::vector<PinningEdge> edges;
  int pos = 0;
  while (pos < pinned) {
    const int size = 1 + static_cast<int>(uniform_index(rng, std::min(3, pinned - pos)));
    PinningEdge e;
    e.heads.assign(nodes.begin() + pos, nodes.begin() + pos + size);
    e.beta = random_simplex(rng, size);
    edges.push_back(std::move(e));
    pos += size;
  }
  return PinningConfig(std::move(edges), kappa);
}

/// Reachability matrix by BFS over tail -> head arcs.
inline std::vector<std::vector<bool>> reachability(const DirectedHypergraph& g) {
  const int n = g.size();
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : g.edges()) {
    for (NodeId t : e.tails) {
      for (NodeId h : e.heads) adj[t].push_back(h);
    }
  }
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int s = 0; s < n; ++s) {
    std::queue<int> q;
    q.push(s);
    reach[s][s] = true;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        if (!reach[s][v]) {
          reach[s][v] = true;
          q.push(v);
        }
      }
    }
  }
  return reach;
}

/// SCCs from mutual reachability, in the library's canonical order.
inline std::vector<std::vector<NodeId>> brute_force_scc(const DirectedHypergraph& g) {
  const auto reach = reachability(g);
  const int n = g.size();
  std::vector<bool> done(n, false);
  std::vector<std::vector<NodeId>> out;
  for (int s = 0; s < n; ++s) {
    if (done[s]) continue;
    std::vector<NodeId> comp;
    for (int v = 0; v < n; ++v) {
      if (reach[s][v] && reach[v][s]) {
        comp.push_back(v);
        done[v] = true;
      }
    }
    out.push_back(comp);
  }
  return out;
}

/// Laplacian assembled directly from the hyperdiffusive coupling: the
/// linearisation of sum_e sigma_e (alpha^T x_T - beta^T x_H) on every head,
/// written as -L x.
inline Eigen::MatrixXd coupling_laplacian(const DirectedHypergraph& g) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(g.size(), g.size());
  for (const auto& e : g.edges()) {
    for (NodeId i : e.heads) {
      for (std::size_t k = 0; k < e.tails.size(); ++k) c(i, e.tails[k]) += e.sigma * e.alpha[k];
      for (std::size_t k = 0; k < e.heads.size(); ++k) c(i, e.heads[k]) -= e.sigma * e.beta[k];
    }
  }
  return -c;
}

/// Eigenvalues of a matrix, sorted by real then imaginary part.
inline std::vector<Complex> eigenvalues(const Eigen::MatrixXd& a) {
  std::vector<Complex> v;
  if (a.rows() == 0) return v;
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  for (int k = 0; k < a.rows(); ++k) v.push_back(es.eigenvalues()[k]);
  std::sort(v.begin(), v.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return v;
}

/// Largest Lyapunov exponent of the shifted Lorenz system by a plain Benettin
/// run, written without the library: one real tangent vector, RK4 on the
/// 6-dimensional joint system, renormalised every unit of time.
inline double lorenz_mle_oracle(double transient, double horizon, double step) {
  using V6 = Eigen::Matrix<double, 6, 1>;
  const double s = 10.0, p = 28.0, b = 8.0 / 3.0;
  auto rhs = [&](const V6& u) {
    V6 d;
    d[0] = s * (u[1] - u[0]);
    d[1] = s * u[0] - u[1] - u[0] * u[2];
    d[2] = u[0] * u[1] - b * (u[2] + p + s);
    d[3] = s * (u[4] - u[3]);
    d[4] = (s - u[2]) * u[3] - u[4] - u[0] * u[5];
    d[5] = u[1] * u[3] + u[0] * u[4] - b * u[5];
    return d;
  };
  V6 u;
  u << -3.0, 2.0, 5.0, 0.0, 0.0, 1.0;
  const long long per_unit = std::llround(1.0 / step);
  const long long units = std::llround(horizon);
  const long long skip = std::llround(transient);
  double log_sum = 0.0;
  for (long long unit = 0; unit < units; ++unit) {
    for (long long k = 0; k < per_unit; ++k) {
      const V6 k1 = rhs(u);
      const V6 k2 = rhs(u + 0.5 * step * k1);
      const V6 k3 = rhs(u + 0.5 * step * k2);
      const V6 k4 = rhs(u + step * k3);
      u += step / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    const double norm = u.tail<3>().norm();
    if (unit >= skip) log_sum += std::log(norm);
    u.tail<3>() /= norm;
  }
  return log_sum / static_cast<double>(units - skip);
}

}  // namespace hyperpin::testing
