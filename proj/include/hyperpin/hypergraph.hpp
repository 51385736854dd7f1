#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hyperpin {

using NodeId = int;

// Tolerance used when checking that tail/head weights sum to one.
inline constexpr double kWeightTolerance = 1e-12;

/// A directed hyperedge: ordered tails and heads, their non-negative weights
/// (each summing to one) and a positive coupling gain.
struct DirectedHyperedge {
  std::vector<NodeId> tails;
  std::vector<NodeId> heads;
  std::vector<double> alpha;  // one per tail
  std::vector<double> beta;   // one per head
  double sigma = 1.0;

  std::size_t cardinality() const { return tails.size() + heads.size(); }

  friend bool operator==(const DirectedHyperedge&, const DirectedHyperedge&) = default;
};

/// Uniform weights: alpha = 1/|tails|, beta = 1/|heads|.
DirectedHyperedge homogeneous_weights(DirectedHyperedge edge);

/// Convenience constructor for an edge with homogeneous weights.
DirectedHyperedge make_edge(std::vector<NodeId> tails, std::vector<NodeId> heads,
                            double sigma = 1.0);

/// Immutable, validated directed hypergraph on nodes 0..n-1.
class DirectedHypergraph {
 public:
  DirectedHypergraph() = default;

  /// Validates every edge and the edge set. Throws OverlapError, WeightError,
  /// IndexError or DuplicateEdgeError. Multi-edges (same tails and heads as
  /// ordered sets) are rejected unless allow_multi_edges is set.
  static DirectedHypergraph build(int n_nodes, std::vector<DirectedHyperedge> edges,
                                  bool allow_multi_edges = false);

  int size() const { return n_nodes_; }
  const std::vector<DirectedHyperedge>& edges() const { return edges_; }
  bool allows_multi_edges() const { return allow_multi_edges_; }

  /// Sub-hypergraph induced by `nodes` (relabelled 0..k-1 in the given
  /// order). Keeps only hyperedges whose endpoints all lie in `nodes`.
  DirectedHypergraph induced(std::span<const NodeId> nodes) const;

  friend bool operator==(const DirectedHypergraph&, const DirectedHypergraph&) = default;

 private:
  int n_nodes_ = 0;
  std::vector<DirectedHyperedge> edges_;
  bool allow_multi_edges_ = false;
};

// ---------------------------------------------------------------------------
// Generators

/// Tail/head layout of the three-body nearest-neighbour ring. Centered is the
/// default: node i+1 is the tail and drives its two neighbours i and i+2.
enum class RingOrientation {
  Centered,  // tail {i+1}, heads {i, i+2}
  Forward,   // tail {i},   heads {i+1, i+2}
  Backward,  // tails {i+1, i+2}, head {i}
};

RingOrientation parse_orientation(const std::string& name);
std::string to_string(RingOrientation orientation);

DirectedHypergraph nearest_neighbor_3body(int n, RingOrientation orientation = RingOrientation::Centered,
                                          double sigma = 1.0);

struct ErParams {
  int n = 100;
  double p = 0.01;
  int max_order = 3;
  double sigma = 1.0;
  // Number of sampled candidate tail sets per (order, head); <= 0 means n-1.
  int candidate_cap = 0;
};

/// Order normalisation constant c_k: the fraction of all (k-1)-tail sets of a
/// head that are offered as candidates.
double er_order_constant(int n, int order, int candidate_cap = 0);

/// Random directed hypergraph with single-head hyperedges. For every order
/// k in 2..max_order and every head i, `candidate_cap` distinct (k-1)-subsets
/// of the other nodes are drawn uniformly and each is kept with probability p.
DirectedHypergraph er_hypergraph(const ErParams& params, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Structure

/// Strongly connected components under head-to-tail chaining (u reaches v
/// through a hyperedge if u is a tail and v a head). Each component is sorted;
/// components are ordered by their smallest node.
std::vector<std::vector<NodeId>> strongly_connected_components(const DirectedHypergraph& graph);

struct SccResult {
  std::vector<NodeId> nodes;  // sorted, ids in the parent hypergraph
  DirectedHypergraph sub;     // induced sub-hypergraph, relabelled
};

/// Largest SCC (ties go to the component with the smallest node id).
SccResult giant_scc(const DirectedHypergraph& graph);

struct NodeDegree {
  int d_in = 0;   // hyperedges having the node as a head
  int d_out = 0;  // hyperedges having the node as a tail
  int delta() const { return d_out - d_in; }
};
using DegreeReport = std::vector<NodeDegree>;

DegreeReport degrees(const DirectedHypergraph& graph);

// ---------------------------------------------------------------------------
// Text format
//
//   N <n_nodes>
//   E sigma=<float> T <id:weight,...> H <id:weight,...>
//   E sigma=<float> T <id,...> H <id,...> hom
//
// An empty tail or head list is written as '-'. Lines starting with '#' are
// comments.

DirectedHypergraph read_hypergraph(std::istream& in);
DirectedHypergraph read_hypergraph_file(const std::string& path);
void write_hypergraph(std::ostream& out, const DirectedHypergraph& graph);

}  // namespace hyperpin
