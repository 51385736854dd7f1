#include "hyperpin/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "hyperpin/errors.hpp"

namespace hyperpin {

Spectrum spectrum(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw Error("spectrum: matrix is not square");
  Spectrum s;
  const auto n = a.rows();
  if (n == 0) return s;
  if (n == 1) {
    s.values.push_back({a(0, 0), 0.0});
    return s;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() == Eigen::Success) {
    const auto& ev = solver.eigenvalues();
    s.values.assign(ev.data(), ev.data() + ev.size());
  } else {
    // The real double-shift QR stalls on some highly symmetric (circulant-like)
    // blocks; the complex single-shift iteration handles them.
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> fallback;
    fallback.setMaxIterations(100 * n);
    fallback.compute(a.cast<Complex>(), /*computeEigenvectors=*/false);
    if (fallback.info() != Eigen::Success) throw ConvergenceError("eigenvalue iteration did not converge");
    const auto& ev = fallback.eigenvalues();
    s.values.assign(ev.data(), ev.data() + ev.size());
  }
  std::sort(s.values.begin(), s.values.end(), [](const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return s;
}

Eigen::MatrixXd laplacian(const DirectedHypergraph& graph) {
  const int n = graph.size();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : graph.edges()) {
    for (std::size_t hi = 0; hi < e.heads.size(); ++hi) {
      const NodeId i = e.heads[hi];
      for (std::size_t t = 0; t < e.tails.size(); ++t) {
        lap(i, e.tails[t]) -= e.sigma * e.alpha[t];
      }
      for (std::size_t h = 0; h < e.heads.size(); ++h) {
        if (h != hi) lap(i, e.heads[h]) += e.sigma * e.beta[h];
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) off += lap(i, j);
    }
    lap(i, i) = -off;
  }
  return lap;
}

// ---------------------------------------------------------------------------

PinningConfig::PinningConfig(std::vector<PinningEdge> edges, double kappa)
    : edges_(std::move(edges)), kappa_(kappa) {
  if (!(kappa_ >= 0.0) || !std::isfinite(kappa_)) throw WeightError("pinning gain must be non-negative");
  std::set<NodeId> seen;
  for (const auto& e : edges_) {
    if (e.heads.empty()) throw SizeError("pinning edge without heads");
    if (e.beta.size() != e.heads.size()) throw WeightError("pinning head weight count mismatch");
    double sum = 0.0;
    for (double b : e.beta) {
      // A head with weight 0 is not a head; it would also make T singular.
      if (!(b > 0.0) || !std::isfinite(b)) throw WeightError("pinning head weights must be positive");
      sum += b;
    }
    if (std::abs(sum - 1.0) > kWeightTolerance) throw WeightError("pinning head weights must sum to one");
    for (NodeId h : e.heads) {
      if (!seen.insert(h).second) {
        throw OverlapError("node " + std::to_string(h) + " appears in two pinning head sets");
      }
    }
  }
}

PinningConfig PinningConfig::homogeneous(const std::vector<std::vector<NodeId>>& head_sets, double kappa) {
  std::vector<PinningEdge> edges;
  edges.reserve(head_sets.size());
  for (const auto& heads : head_sets) {
    const double w = heads.empty() ? 0.0 : 1.0 / static_cast<double>(heads.size());
    edges.push_back({heads, std::vector<double>(heads.size(), w)});
  }
  return PinningConfig(std::move(edges), kappa);
}

PinningConfig PinningConfig::singletons(std::span<const NodeId> nodes, double kappa) {
  std::vector<PinningEdge> edges;
  edges.reserve(nodes.size());
  for (NodeId v : nodes) edges.push_back({{v}, {1.0}});
  return PinningConfig(std::move(edges), kappa);
}

std::size_t PinningConfig::pinned_count() const {
  std::size_t c = 0;
  for (const auto& e : edges_) c += e.heads.size();
  return c;
}

bool PinningConfig::all_singletons() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const PinningEdge& e) { return e.heads.size() == 1; });
}

PinningConfig PinningConfig::subset(std::span<const int> indices) const {
  PinningConfig out;
  out.kappa_ = kappa_;
  out.edges_.reserve(indices.size());
  for (int i : indices) out.edges_.push_back(edges_.at(i));
  return out;
}

PinningConfig PinningConfig::with_kappa(double kappa) const {
  PinningConfig out = *this;
  if (!(kappa >= 0.0)) throw WeightError("pinning gain must be non-negative");
  out.kappa_ = kappa;
  return out;
}

void PinningConfig::check_nodes(int n) const {
  for (const auto& e : edges_) {
    for (NodeId h : e.heads) {
      if (h < 0 || h >= n) throw IndexError("pinned node " + std::to_string(h) + " out of range");
    }
  }
}

std::vector<NodeId> pinned_first_order(const PinningConfig& cfg, int n) {
  cfg.check_nodes(n);
  std::vector<NodeId> order;
  order.reserve(n);
  std::vector<char> pinned(n, 0);
  for (const auto& e : cfg.edges()) {
    for (NodeId h : e.heads) {
      order.push_back(h);
      pinned[h] = 1;
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!pinned[v]) order.push_back(v);
  }
  return order;
}

Eigen::MatrixXd permute(const Eigen::MatrixXd& a, std::span<const NodeId> order) {
  const auto n = static_cast<Eigen::Index>(order.size());
  Eigen::MatrixXd b(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) b(i, j) = a(order[i], order[j]);
  }
  return b;
}

Eigen::MatrixXd remove_rows_cols(const Eigen::MatrixXd& a, std::span<const NodeId> removed) {
  std::vector<char> drop(a.rows(), 0);
  for (NodeId r : removed) drop.at(r) = 1;
  std::vector<NodeId> keep;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (!drop[i]) keep.push_back(static_cast<NodeId>(i));
  }
  return permute(a, keep);
}

PinningMatrix pinning_matrix(const PinningConfig& cfg, int n) {
  PinningMatrix pm;
  pm.permutation = pinned_first_order(cfg, n);
  pm.matrix = Eigen::MatrixXd::Zero(n, n);
  Eigen::Index pos = 0;
  for (const auto& e : cfg.edges()) {
    const auto s = static_cast<Eigen::Index>(e.heads.size());
    for (Eigen::Index r = 0; r < s; ++r) {
      for (Eigen::Index c = 0; c < s; ++c) pm.matrix(pos + r, pos + c) = e.beta[c];
    }
    pos += s;
  }
  return pm;
}

Eigen::MatrixXd build_transform(const PinningConfig& cfg, int n, NullBasis basis) {
  cfg.check_nodes(n);
  const auto m = static_cast<Eigen::Index>(cfg.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  Eigen::Index row = 0;            // first row of the current block
  Eigen::Index null_col = m;       // next free non-unit column
  for (Eigen::Index b = 0; b < m; ++b) {
    const auto& e = cfg.edges()[b];
    const auto s = static_cast<Eigen::Index>(e.heads.size());
    for (Eigen::Index r = 0; r < s; ++r) t(row + r, b) = 1.0;
    for (Eigen::Index k = 0; k + 1 < s; ++k, ++null_col) {
      const Eigen::Index first = basis == NullBasis::Chain ? k : 0;
      t(row + first, null_col) = 1.0 / e.beta[first];
      t(row + k + 1, null_col) = -1.0 / e.beta[k + 1];
    }
    row += s;
  }
  for (; row < n; ++row, ++null_col) t(row, null_col) = 1.0;
  return t;
}

namespace {

// T^{-1} (L permuted) T. Singleton-only configurations have T = I, so the
// result is exact.
Eigen::MatrixXd transform_laplacian(const Eigen::MatrixXd& permuted, const Eigen::MatrixXd& t,
                                    bool identity) {
  if (identity) return permuted;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(t);
  if (!lu.isInvertible()) throw SingularTransform("pinning transform is singular");
  return lu.solve(permuted * t);
}

}  // namespace

ReducedBlock reduced_block(const Eigen::MatrixXd& lap, const PinningConfig& cfg, NullBasis basis) {
  const int n = static_cast<int>(lap.rows());
  ReducedBlock rb;
  rb.m = static_cast<int>(cfg.size());
  rb.permutation = pinned_first_order(cfg, n);
  rb.transform = build_transform(cfg, n, basis);
  rb.lbar = transform_laplacian(permute(lap, rb.permutation), rb.transform, cfg.all_singletons());
  rb.l11 = rb.lbar.topLeftCorner(rb.m, rb.m);
  rb.l22 = rb.lbar.bottomRightCorner(n - rb.m, n - rb.m);
  rb.spectrum = spectrum(rb.l22);
  return rb;
}

Eigen::MatrixXd m_kappa(const Eigen::MatrixXd& lap, const PinningConfig& cfg, double kappa) {
  const auto pm = pinning_matrix(cfg, static_cast<int>(lap.rows()));
  return permute(lap, pm.permutation) + kappa * pm.matrix;
}

CandidateReduction::CandidateReduction(const Eigen::MatrixXd& lap, const PinningConfig& candidates) {
  const int n = static_cast<int>(lap.rows());
  m_ = static_cast<int>(candidates.size());
  const auto order = pinned_first_order(candidates, n);
  const auto t = build_transform(candidates, n);
  lbar_ = transform_laplacian(permute(lap, order), t, candidates.all_singletons());
}

Eigen::MatrixXd CandidateReduction::reduced(std::span<const int> chosen) const {
  return remove_rows_cols(lbar_, chosen);
}

Spectrum CandidateReduction::reduced_spectrum(std::span<const int> chosen) const {
  return spectrum(reduced(chosen));
}

EigenMatch match_eigenvalues(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) throw SizeError("eigenvalue lists differ in length");
  struct Candidate {
    double dist;
    double re;
    std::size_t i, j;
  };
  std::vector<Candidate> all;
  all.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      all.push_back({std::abs(a[i] - b[j]), a[i].real(), i, j});
    }
  }
  std::sort(all.begin(), all.end(), [](const Candidate& x, const Candidate& y) {
    if (x.dist != y.dist) return x.dist < y.dist;
    if (x.re != y.re) return x.re < y.re;
    return std::tie(x.i, x.j) < std::tie(y.i, y.j);
  });
  EigenMatch match;
  std::vector<char> used_a(a.size(), 0), used_b(b.size(), 0);
  for (const auto& c : all) {
    if (used_a[c.i] || used_b[c.j]) continue;
    used_a[c.i] = used_b[c.j] = 1;
    match.pairs.emplace_back(c.i, c.j);
    match.max_distance = std::max(match.max_distance, c.dist);
  }
  std::sort(match.pairs.begin(), match.pairs.end());
  return match;
}

}  // namespace hyperpin
