#include <algorithm>
#include <cmath>
#include <set>

#include "hyperpin/errors.hpp"
#include "hyperpin/hypergraph.hpp"
#include "hyperpin/random.hpp"

namespace hyperpin {

namespace {

// C(n, k) as a double; exact for the sizes used here and saturating gracefully.
double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

int effective_cap(int n, int order, int candidate_cap) {
  const double all = binomial(n - 1, order - 1);
  const double cap = candidate_cap > 0 ? candidate_cap : n - 1;
  return static_cast<int>(std::min(all, cap));
}

// Floyd's algorithm: k distinct values from [0, n), returned sorted.
std::vector<NodeId> sample_subset(int n, int k, Rng& rng) {
  std::set<NodeId> chosen;
  for (int j = n - k; j < n; ++j) {
    NodeId t = static_cast<NodeId>(uniform_index(rng, static_cast<std::uint64_t>(j) + 1));
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

}  // namespace

DirectedHypergraph nearest_neighbor_3body(int n, RingOrientation orientation, double sigma) {
  if (n < 3) throw SizeError("three-body ring needs at least 3 nodes");
  std::vector<DirectedHyperedge> edges;
  edges.reserve(n);
  for (int i = 0; i < n; ++i) {
    const NodeId a = i, b = (i + 1) % n, c = (i + 2) % n;
    switch (orientation) {
      case RingOrientation::Centered: edges.push_back(make_edge({b}, {a, c}, sigma)); break;
      case RingOrientation::Forward: edges.push_back(make_edge({a}, {b, c}, sigma)); break;
      case RingOrientation::Backward: edges.push_back(make_edge({b, c}, {a}, sigma)); break;
    }
  }
  return DirectedHypergraph::build(n, std::move(edges));
}

double er_order_constant(int n, int order, int candidate_cap) {
  const double all = binomial(n - 1, order - 1);
  if (all == 0.0) return 0.0;
  return effective_cap(n, order, candidate_cap) / all;
}

DirectedHypergraph er_hypergraph(const ErParams& params, std::uint64_t seed) {
  const int n = params.n;
  if (n < 2) throw SizeError("ER hypergraph needs at least 2 nodes");
  if (!(params.p >= 0.0 && params.p <= 1.0)) throw ConfigError("ER probability must be in [0, 1]");
  if (params.max_order < 2) throw ConfigError("ER maximum order must be at least 2");

  Rng rng(seed);
  std::vector<DirectedHyperedge> edges;
  for (int order = 2; order <= params.max_order && order <= n; ++order) {
    const int cap = effective_cap(n, order, params.candidate_cap);
    for (NodeId head = 0; head < n; ++head) {
      int count = 0;
      for (int c = 0; c < cap; ++c) {
        if (uniform01(rng) < params.p) ++count;
      }
      // Distinct uniformly drawn tail sets among the other n-1 nodes.
      std::set<std::vector<NodeId>> picked;
      while (static_cast<int>(picked.size()) < count) {
        auto subset = sample_subset(n - 1, order - 1, rng);
        for (auto& v : subset) {
          if (v >= head) ++v;
        }
        picked.insert(std::move(subset));
      }
      for (const auto& tails : picked) edges.push_back(make_edge(tails, {head}, params.sigma));
    }
  }
  return DirectedHypergraph::build(n, std::move(edges));
}

}  // namespace hyperpin
