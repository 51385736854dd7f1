#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hyperpin/hypergraph.hpp"

namespace hyperpin {

using Complex = std::complex<double>;

/// Eigenvalues sorted by real part, then imaginary part.
struct Spectrum {
  std::vector<Complex> values;

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
};

/// All eigenvalues of a square real matrix (dense QR iteration). Throws
/// ConvergenceError if the solver does not converge.
Spectrum spectrum(const Eigen::MatrixXd& a);

/// Signed-graph Laplacian of the hypergraph coupling. Row i collects, for
/// every hyperedge having i as a head, sigma * (beta_j for the other heads j,
/// -alpha_j for the tails j), with the diagonal closing each row to zero sum.
/// The linearised coupling of node i is -sum_j L_ij x_j.
Eigen::MatrixXd laplacian(const DirectedHypergraph& graph);

// ---------------------------------------------------------------------------
// Pinning

struct PinningEdge {
  std::vector<NodeId> heads;
  std::vector<double> beta;
};

/// A set of pinning hyperedges (pinner as sole tail) with pairwise disjoint,
/// strictly positively weighted head sets, plus the control gain.
class PinningConfig {
 public:
  PinningConfig() = default;
  explicit PinningConfig(std::vector<PinningEdge> edges, double kappa = 1.0);

  static PinningConfig homogeneous(const std::vector<std::vector<NodeId>>& head_sets, double kappa = 1.0);
  static PinningConfig singletons(std::span<const NodeId> nodes, double kappa = 1.0);

  const std::vector<PinningEdge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  double kappa() const { return kappa_; }
  std::size_t pinned_count() const;
  bool all_singletons() const;

  /// Edges at the given indices, in that order.
  PinningConfig subset(std::span<const int> indices) const;
  PinningConfig with_kappa(double kappa) const;

  /// Throws IndexError if any head lies outside [0, n).
  void check_nodes(int n) const;

 private:
  std::vector<PinningEdge> edges_;
  double kappa_ = 1.0;
};

/// Node order with pinned nodes first (edge by edge, heads in order), then the
/// unpinned nodes ascending. order[k] is the original id at position k.
std::vector<NodeId> pinned_first_order(const PinningConfig& cfg, int n);

/// B(i, j) = A(order[i], order[j]).
Eigen::MatrixXd permute(const Eigen::MatrixXd& a, std::span<const NodeId> order);

/// Principal submatrix of `a` with the listed rows/columns removed.
Eigen::MatrixXd remove_rows_cols(const Eigen::MatrixXd& a, std::span<const NodeId> removed);

struct PinningMatrix {
  Eigen::MatrixXd matrix;          // pinned-first ordering
  std::vector<NodeId> permutation;  // see pinned_first_order
};

/// Block-diagonal pinning matrix: one rank-one block per pinning edge whose
/// rows all equal beta^T, zeros for unpinned nodes.
PinningMatrix pinning_matrix(const PinningConfig& cfg, int n);

/// Basis of each block's beta-orthogonal complement used by build_transform.
enum class NullBasis {
  Chain,  // v_k = e_k / beta_k - e_{k+1} / beta_{k+1}
  Star,   // v_k = e_1 / beta_1 - e_{k+1} / beta_{k+1}
};

/// Matrix T with T^{-1} P T = diag(1_m, 0_{n-m}) in pinned-first ordering.
/// Columns 0..m-1 are the blocks' all-ones vectors, followed by each block's
/// null vectors and identity columns for unpinned nodes.
Eigen::MatrixXd build_transform(const PinningConfig& cfg, int n, NullBasis basis = NullBasis::Chain);

struct ReducedBlock {
  Eigen::MatrixXd transform;  // T
  Eigen::MatrixXd lbar;       // T^{-1} L T (pinned-first)
  Eigen::MatrixXd l11;        // leading m x m block
  Eigen::MatrixXd l22;        // trailing (n-m) x (n-m) block
  std::vector<NodeId> permutation;
  Spectrum spectrum;          // eigenvalues of l22
  int m = 0;
};

/// Throws SingularTransform if T cannot be inverted.
ReducedBlock reduced_block(const Eigen::MatrixXd& laplacian, const PinningConfig& cfg,
                           NullBasis basis = NullBasis::Chain);

/// M(kappa) = L + kappa P in the pinned-first ordering.
Eigen::MatrixXd m_kappa(const Eigen::MatrixXd& laplacian, const PinningConfig& cfg, double kappa);

/// Transformed Laplacian for a whole candidate set of pinning edges. The
/// reduced block of any candidate subset S is the principal submatrix of
/// lbar() with the unit coordinates of S (coordinate c == candidate c)
/// removed, because T for the full set also diagonalises P_S.
class CandidateReduction {
 public:
  CandidateReduction() = default;
  CandidateReduction(const Eigen::MatrixXd& laplacian, const PinningConfig& candidates);

  const Eigen::MatrixXd& lbar() const { return lbar_; }
  int candidate_count() const { return m_; }
  int dimension() const { return static_cast<int>(lbar_.rows()); }

  Eigen::MatrixXd reduced(std::span<const int> chosen) const;
  Spectrum reduced_spectrum(std::span<const int> chosen) const;

 private:
  Eigen::MatrixXd lbar_;
  int m_ = 0;
};

/// Greedy minimal-distance assignment between two eigenvalue lists of equal
/// length. Ties are resolved by real-part order.
struct EigenMatch {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  double max_distance = 0.0;
};
EigenMatch match_eigenvalues(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace hyperpin
