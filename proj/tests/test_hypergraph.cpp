#include <sstream>

#include <gtest/gtest.h>

#include "hyperpin/errors.hpp"
#include "hyperpin/hypergraph.hpp"
#include "test_support.hpp"

namespace hyperpin {
namespace {

DirectedHypergraph three_node() {
  return DirectedHypergraph::build(3, {make_edge({2}, {0}), make_edge({0}, {1, 2})});
}

TEST(Hypergraph, BuildsThreeNode) {
  const auto g = three_node();
  EXPECT_EQ(g.size(), 3);
  ASSERT_EQ(g.edges().size(), 2u);
  EXPECT_EQ(g.edges()[1].beta, (std::vector<double>{0.5, 0.5}));
}

TEST(Hypergraph, PairwiseEdgeIsValid) {
  const auto g = DirectedHypergraph::build(2, {make_edge({0}, {1})});
  EXPECT_EQ(g.edges()[0].cardinality(), 2);
}

TEST(Hypergraph, RejectsTailHeadOverlap) {
  EXPECT_THROW(DirectedHypergraph::build(2, {make_edge({0}, {0, 1})}), OverlapError);
}

TEST(Hypergraph, RejectsRepeatedNodeInList) {
  DirectedHyperedge e{{0, 0}, {1}, {0.5, 0.5}, {1.0}, 1.0};
  EXPECT_THROW(DirectedHypergraph::build(2, {e}), OverlapError);
}

TEST(Hypergraph, RejectsBadWeights) {
  DirectedHyperedge unnormalised{{0}, {1, 2}, {1.0}, {0.5, 0.6}, 1.0};
  EXPECT_THROW(DirectedHypergraph::build(3, {unnormalised}), WeightError);
  DirectedHyperedge negative{{0}, {1, 2}, {1.0}, {1.5, -0.5}, 1.0};
  EXPECT_THROW(DirectedHypergraph::build(3, {negative}), WeightError);
  DirectedHyperedge short_list{{0}, {1, 2}, {1.0}, {1.0}, 1.0};
  EXPECT_THROW(DirectedHypergraph::build(3, {short_list}), WeightError);
  DirectedHyperedge zero_gain{{0}, {1}, {1.0}, {1.0}, 0.0};
  EXPECT_THROW(DirectedHypergraph::build(2, {zero_gain}), WeightError);
}

TEST(Hypergraph, WeightToleranceIs1em12) {
  DirectedHyperedge close{{0}, {1, 2}, {1.0}, {0.5, 0.5 + 5e-13}, 1.0};
  EXPECT_NO_THROW(DirectedHypergraph::build(3, {close}));
  DirectedHyperedge off{{0}, {1, 2}, {1.0}, {0.5, 0.5 + 1e-10}, 1.0};
  EXPECT_THROW(DirectedHypergraph::build(3, {off}), WeightError);
}

TEST(Hypergraph, RejectsOutOfRangeAndEmpty) {
  EXPECT_THROW(DirectedHypergraph::build(2, {make_edge({0}, {2})}), IndexError);
  EXPECT_THROW(DirectedHypergraph::build(2, {make_edge({-1}, {1})}), IndexError);
  EXPECT_THROW(DirectedHypergraph::build(2, {DirectedHyperedge{}}), SizeError);
}

TEST(Hypergraph, EmptyTailEdgeIsAllowed) {
  // Tails may be empty; then alpha is empty and only the heads are weighted.
  const auto g = DirectedHypergraph::build(2, {make_edge({}, {0, 1})});
  EXPECT_TRUE(g.edges()[0].alpha.empty());
}

TEST(Hypergraph, DuplicateEdgesNeedMultiFlag) {
  std::vector<DirectedHyperedge> twice{make_edge({0}, {1, 2}), make_edge({0}, {2, 1})};
  EXPECT_THROW(DirectedHypergraph::build(3, twice), DuplicateEdgeError);
  const auto g = DirectedHypergraph::build(3, twice, true);
  EXPECT_EQ(g.edges().size(), 2u);
}

TEST(HomogeneousWeights, MatchesDefinition) {
  auto a = make_edge({0, 1}, {2});
  EXPECT_EQ(a.alpha, (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(a.beta, (std::vector<double>{1.0}));
  auto b = make_edge({0}, {1});
  EXPECT_EQ(b.alpha, (std::vector<double>{1.0}));
  auto c = make_edge({0}, {1, 2, 3});
  for (double w : c.beta) EXPECT_DOUBLE_EQ(w, 1.0 / 3.0);
}

TEST(Ring, ThreeNodesHasThreeOrderThreeEdges) {
  const auto g = nearest_neighbor_3body(3);
  ASSERT_EQ(g.edges().size(), 3u);
  for (const auto& e : g.edges()) EXPECT_EQ(e.cardinality(), 3);
}

TEST(Ring, CenteredLayout) {
  const auto g = nearest_neighbor_3body(6);
  for (int i = 0; i < 6; ++i) {
    const auto& e = g.edges()[i];
    EXPECT_EQ(e.tails, (std::vector<NodeId>{(i + 1) % 6}));
    std::vector<NodeId> heads{i, (i + 2) % 6};
    std::sort(heads.begin(), heads.end());
    auto got = e.heads;
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, heads);
  }
}

TEST(Ring, EveryOrientationHasNEdgesOfCardinalityThree) {
  for (auto o : {RingOrientation::Centered, RingOrientation::Forward, RingOrientation::Backward}) {
    for (int n = 3; n <= 12; ++n) {
      const auto g = nearest_neighbor_3body(n, o);
      ASSERT_EQ(static_cast<int>(g.edges().size()), n);
      for (const auto& e : g.edges()) EXPECT_EQ(e.cardinality(), 3);
    }
  }
}

TEST(Ring, OrientationNamesRoundTrip) {
  for (auto o : {RingOrientation::Centered, RingOrientation::Forward, RingOrientation::Backward}) {
    EXPECT_EQ(parse_orientation(to_string(o)), o);
  }
  EXPECT_THROW(parse_orientation("sideways"), ConfigError);
}

TEST(Ring, TooSmall) { EXPECT_THROW(nearest_neighbor_3body(2), SizeError); }

TEST(Degrees, ThreeNode) {
  const auto d = degrees(three_node());
  EXPECT_EQ(d[0].d_out, 1);
  EXPECT_EQ(d[0].d_in, 1);
  EXPECT_EQ(d[0].delta(), 0);
  EXPECT_EQ(d[1].d_out, 0);
  EXPECT_EQ(d[1].d_in, 1);
  EXPECT_EQ(d[1].delta(), -1);
  EXPECT_EQ(d[2].d_out, 1);
  EXPECT_EQ(d[2].d_in, 1);
}

TEST(Degrees, EdgelessIsZero) {
  const auto d = degrees(DirectedHypergraph::build(4, {}));
  for (const auto& v : d) {
    EXPECT_EQ(v.d_in, 0);
    EXPECT_EQ(v.d_out, 0);
  }
}

TEST(Degrees, SumsMatchMembershipCounts) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = testing::random_hypergraph(rng, 8, 12, 4);
    const auto d = degrees(g);
    long long in = 0, out = 0, heads = 0, tails = 0;
    for (const auto& v : d) {
      in += v.d_in;
      out += v.d_out;
    }
    for (const auto& e : g.edges()) {
      heads += e.heads.size();
      tails += e.tails.size();
    }
    EXPECT_EQ(in, heads);
    EXPECT_EQ(out, tails);
  }
}

TEST(Scc, ThreeNodeMatchesReachabilityOracle) {
  const auto g = three_node();
  EXPECT_EQ(strongly_connected_components(g), testing::brute_force_scc(g));
  // Node 1 is never a tail, so it cannot reach anything.
  EXPECT_EQ(giant_scc(g).nodes, (std::vector<NodeId>{0, 2}));
}

TEST(Scc, TwoCycle) {
  const auto g = DirectedHypergraph::build(2, {make_edge({0}, {1}), make_edge({1}, {0})});
  EXPECT_EQ(giant_scc(g).nodes, (std::vector<NodeId>{0, 1}));
}

TEST(Scc, EdgelessGivesSingletons) {
  const auto g = DirectedHypergraph::build(4, {});
  EXPECT_EQ(strongly_connected_components(g).size(), 4u);
  EXPECT_EQ(giant_scc(g).nodes.size(), 1u);
  EXPECT_EQ(giant_scc(g).nodes.front(), 0);
}

TEST(Scc, RandomGraphsMatchOracle) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(uniform_index(rng, 9));
    const auto g = testing::random_hypergraph(rng, n, static_cast<int>(uniform_index(rng, 2 * n)), 4);
    ASSERT_EQ(strongly_connected_components(g), testing::brute_force_scc(g)) << "trial " << trial;
  }
}

// Holds for pairwise graphs. With larger hyperedges the induced subgraph drops
// edges that leave the component, which can split it (see next test).
TEST(Scc, GiantIsIdempotentOnPairwiseGraphs) {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testing::random_hypergraph(rng, 9, 14, 2);
    const auto first = giant_scc(g);
    const auto second = giant_scc(first.sub);
    EXPECT_EQ(static_cast<int>(second.nodes.size()), first.sub.size());
  }
}

TEST(Scc, InducedSubgraphCanSplitTheComponent) {
  // 0 -> 1 only through an edge with the outside head 2.
  const auto g = DirectedHypergraph::build(3, {make_edge({0}, {1, 2}), make_edge({1}, {0})});
  const auto first = giant_scc(g);
  EXPECT_EQ(first.nodes, (std::vector<NodeId>{0, 1}));
  EXPECT_EQ(giant_scc(first.sub).nodes.size(), 1u);
}

TEST(Induced, KeepsOnlyInternalEdgesAndRelabels) {
  const auto g = DirectedHypergraph::build(4, {make_edge({3}, {1}), make_edge({0}, {1, 2}), make_edge({1}, {3})});
  const std::vector<NodeId> keep{3, 1};
  const auto sub = g.induced(keep);
  EXPECT_EQ(sub.size(), 2);
  ASSERT_EQ(sub.edges().size(), 2u);
  EXPECT_EQ(sub.edges()[0].tails, (std::vector<NodeId>{0}));
  EXPECT_EQ(sub.edges()[0].heads, (std::vector<NodeId>{1}));
}

TEST(Er, DeterministicPerSeed) {
  ErParams p;
  p.n = 40;
  p.p = 0.05;
  EXPECT_EQ(er_hypergraph(p, 3), er_hypergraph(p, 3));
  EXPECT_NE(er_hypergraph(p, 3), er_hypergraph(p, 4));
}

TEST(Er, SingleHeadEdgesWithinOrder) {
  ErParams p;
  p.n = 60;
  p.p = 0.05;
  p.max_order = 5;
  p.sigma = 2.5;
  const auto g = er_hypergraph(p, 1);
  ASSERT_FALSE(g.edges().empty());
  for (const auto& e : g.edges()) {
    EXPECT_EQ(e.heads.size(), 1u);
    EXPECT_GE(e.cardinality(), 2);
    EXPECT_LE(e.cardinality(), 5);
    EXPECT_DOUBLE_EQ(e.sigma, 2.5);
  }
}

TEST(Er, ZeroProbabilityIsEdgeless) {
  ErParams p;
  p.p = 0.0;
  const auto g = er_hypergraph(p, 1);
  EXPECT_TRUE(g.edges().empty());
  EXPECT_EQ(giant_scc(g).nodes.size(), 1u);
}

TEST(Er, OrderConstant) {
  // Pairwise order: every one of the n-1 tails is a candidate.
  EXPECT_DOUBLE_EQ(er_order_constant(100, 2), 1.0);
  // Order 3: n-1 of C(n-1, 2) tail pairs are offered.
  EXPECT_DOUBLE_EQ(er_order_constant(100, 3), 99.0 / (99.0 * 98.0 / 2.0));
}

TEST(Er, RejectsBadParameters) {
  ErParams p;
  p.p = 1.5;
  EXPECT_THROW(er_hypergraph(p, 1), ConfigError);
  p.p = 0.1;
  p.max_order = 1;
  EXPECT_THROW(er_hypergraph(p, 1), ConfigError);
}

TEST(Io, RoundTrip) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testing::random_hypergraph(rng, 7, 10, 4);
    std::stringstream buf;
    write_hypergraph(buf, g);
    EXPECT_EQ(read_hypergraph(buf), g);
  }
}

TEST(Io, ParsesHomogeneousAndEmptyTails) {
  std::stringstream in(
      "# three-node example\n"
      "N 3\n"
      "E sigma=1 T 2 H 0 hom\n"
      "E sigma=1 T 0 H 1,2 hom\n"
      "E sigma=0.5 T - H 0:0.25,1:0.75\n");
  const auto g = read_hypergraph(in);
  ASSERT_EQ(g.edges().size(), 3u);
  EXPECT_EQ(g.edges()[1].beta, (std::vector<double>{0.5, 0.5}));
  EXPECT_TRUE(g.edges()[2].tails.empty());
  EXPECT_DOUBLE_EQ(g.edges()[2].beta[1], 0.75);
}

TEST(Io, Errors) {
  auto parse = [](const std::string& text) {
    std::stringstream in(text);
    return read_hypergraph(in);
  };
  EXPECT_THROW(parse("E sigma=1 T 0 H 1 hom\n"), ParseError);
  EXPECT_THROW(parse("N 2\nE sigma=1 T 0 H 1\n"), ParseError);
  EXPECT_THROW(parse("N 2\nE sigma=x T 0:1 H 1:1\n"), ParseError);
  EXPECT_THROW(parse("N 2\nX\n"), ParseError);
  EXPECT_THROW(parse("N 2\nE sigma=1 T 0:1 H 1:1,0\n"), ParseError);
  EXPECT_THROW(parse("N 2\nE sigma=1 T 0:1 H 0:1\n"), OverlapError);
  EXPECT_THROW(parse(""), ParseError);
}

}  // namespace
}  // namespace hyperpin
