#include "hyperpin/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "hyperpin/errors.hpp"

namespace hyperpin {

namespace {

void check_weights(const std::vector<double>& weights, std::size_t expected, const char* what) {
  if (weights.size() != expected) {
    throw WeightError(std::string(what) + " weight count does not match node count");
  }
  if (expected == 0) return;
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw WeightError(std::string(what) + " weights must be finite and non-negative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightTolerance) {
    throw WeightError(std::string(what) + " weights must sum to one");
  }
}

void check_edge(const DirectedHyperedge& e, int n_nodes) {
  if (e.tails.empty() && e.heads.empty()) {
    throw SizeError("hyperedge has neither tails nor heads");
  }
  auto in_range = [n_nodes](NodeId v) { return v >= 0 && v < n_nodes; };
  for (const auto* list : {&e.tails, &e.heads}) {
    for (NodeId v : *list) {
      if (!in_range(v)) throw IndexError("node " + std::to_string(v) + " out of range");
    }
    std::set<NodeId> unique(list->begin(), list->end());
    if (unique.size() != list->size()) throw OverlapError("repeated node inside a tail or head list");
  }
  for (NodeId t : e.tails) {
    if (std::find(e.heads.begin(), e.heads.end(), t) != e.heads.end()) {
      throw OverlapError("node " + std::to_string(t) + " is both a tail and a head");
    }
  }
  check_weights(e.alpha, e.tails.size(), "tail");
  check_weights(e.beta, e.heads.size(), "head");
  if (!(e.sigma > 0.0) || !std::isfinite(e.sigma)) {
    throw WeightError("coupling gain sigma must be positive");
  }
}

std::pair<std::vector<NodeId>, std::vector<NodeId>> edge_key(const DirectedHyperedge& e) {
  auto t = e.tails;
  auto h = e.heads;
  std::sort(t.begin(), t.end());
  std::sort(h.begin(), h.end());
  return {std::move(t), std::move(h)};
}

}  // namespace

DirectedHyperedge homogeneous_weights(DirectedHyperedge edge) {
  edge.alpha.assign(edge.tails.size(), edge.tails.empty() ? 0.0 : 1.0 / edge.tails.size());
  edge.beta.assign(edge.heads.size(), edge.heads.empty() ? 0.0 : 1.0 / edge.heads.size());
  return edge;
}

DirectedHyperedge make_edge(std::vector<NodeId> tails, std::vector<NodeId> heads, double sigma) {
  DirectedHyperedge e;
  e.tails = std::move(tails);
  e.heads = std::move(heads);
  e.sigma = sigma;
  return homogeneous_weights(std::move(e));
}

DirectedHypergraph DirectedHypergraph::build(int n_nodes, std::vector<DirectedHyperedge> edges,
                                             bool allow_multi_edges) {
  if (n_nodes < 0) throw SizeError("negative node count");
  for (const auto& e : edges) check_edge(e, n_nodes);
  if (!allow_multi_edges) {
    std::set<std::pair<std::vector<NodeId>, std::vector<NodeId>>> seen;
    for (const auto& e : edges) {
      if (!seen.insert(edge_key(e)).second) {
        throw DuplicateEdgeError("duplicate hyperedge (multi-edges not allowed)");
      }
    }
  }
  DirectedHypergraph g;
  g.n_nodes_ = n_nodes;
  g.edges_ = std::move(edges);
  g.allow_multi_edges_ = allow_multi_edges;
  return g;
}

DirectedHypergraph DirectedHypergraph::induced(std::span<const NodeId> nodes) const {
  std::vector<int> relabel(n_nodes_, -1);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k] < 0 || nodes[k] >= n_nodes_) throw IndexError("induced: node out of range");
    relabel[nodes[k]] = static_cast<int>(k);
  }
  std::vector<DirectedHyperedge> kept;
  for (const auto& e : edges_) {
    auto inside = [&](NodeId v) { return relabel[v] >= 0; };
    if (!std::all_of(e.tails.begin(), e.tails.end(), inside) ||
        !std::all_of(e.heads.begin(), e.heads.end(), inside)) {
      continue;
    }
    DirectedHyperedge r = e;
    for (auto& v : r.tails) v = relabel[v];
    for (auto& v : r.heads) v = relabel[v];
    kept.push_back(std::move(r));
  }
  return build(static_cast<int>(nodes.size()), std::move(kept), allow_multi_edges_);
}

std::vector<std::vector<NodeId>> strongly_connected_components(const DirectedHypergraph& graph) {
  const int n = graph.size();
  std::vector<std::vector<NodeId>> succ(n);
  for (const auto& e : graph.edges()) {
    for (NodeId t : e.tails) {
      for (NodeId h : e.heads) succ[t].push_back(h);
    }
  }
  for (auto& s : succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }

  // Iterative Tarjan.
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<NodeId> stack;
  std::vector<std::vector<NodeId>> components;
  int counter = 0;
  std::vector<std::pair<NodeId, std::size_t>> call;
  for (NodeId root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < succ[v].size()) {
        NodeId w = succ[v][next++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<NodeId> comp;
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
      NodeId finished = v;
      call.pop_back();
      if (!call.empty()) {
        NodeId parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

SccResult giant_scc(const DirectedHypergraph& graph) {
  SccResult result;
  if (graph.size() == 0) return result;
  auto comps = strongly_connected_components(graph);
  const std::vector<NodeId>* best = &comps.front();
  for (const auto& c : comps) {
    if (c.size() > best->size()) best = &c;
  }
  result.nodes = *best;
  result.sub = graph.induced(result.nodes);
  return result;
}

DegreeReport degrees(const DirectedHypergraph& graph) {
  DegreeReport report(graph.size());
  for (const auto& e : graph.edges()) {
    for (NodeId t : e.tails) ++report[t].d_out;
    for (NodeId h : e.heads) ++report[h].d_in;
  }
  return report;
}

RingOrientation parse_orientation(const std::string& name) {
  if (name == "centered") return RingOrientation::Centered;
  if (name == "forward") return RingOrientation::Forward;
  if (name == "backward") return RingOrientation::Backward;
  throw ConfigError("unknown ring orientation '" + name + "'");
}

std::string to_string(RingOrientation orientation) {
  switch (orientation) {
    case RingOrientation::Centered: return "centered";
    case RingOrientation::Forward: return "forward";
    case RingOrientation::Backward: return "backward";
  }
  return "centered";
}

}  // namespace hyperpin
