#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "hyperpin/errors.hpp"
#include "hyperpin/spectral.hpp"
#include "test_support.hpp"

namespace hyperpin {
namespace {

DirectedHypergraph three_node() {
  return DirectedHypergraph::build(3, {make_edge({2}, {0}), make_edge({0}, {1, 2})});
}

void expect_spectrum(const Spectrum& s, std::vector<Complex> expected, double tol) {
  ASSERT_EQ(s.size(), expected.size());
  const auto match = match_eigenvalues(s.values, expected);
  EXPECT_LE(match.max_distance, tol);
}

TEST(Laplacian, ThreeNodeIsExact) {
  Eigen::Matrix3d expected;
  expected << 1, 0, -1, -1, 0.5, 0.5, -1, 0.5, 0.5;
  EXPECT_EQ(laplacian(three_node()), Eigen::MatrixXd(expected));
}

TEST(Laplacian, PairwiseEdgeIsDiffusive) {
  const auto l = laplacian(DirectedHypergraph::build(2, {make_edge({0}, {1})}));
  Eigen::Matrix2d expected;
  expected << 0, 0, -1, 1;
  EXPECT_EQ(l, Eigen::MatrixXd(expected));
}

TEST(Laplacian, MatchesDirectCouplingAssembly) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testing::random_hypergraph(rng, 8, 10, 4);
    EXPECT_LE((laplacian(g) - testing::coupling_laplacian(g)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Laplacian, ZeroRowSums) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = testing::random_hypergraph(rng, 2 + static_cast<int>(uniform_index(rng, 9)), 12, 5);
    EXPECT_LE(laplacian(g).rowwise().sum().cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Ring, SixNodesUnstableFourNodesStable) {
  const auto six = spectrum(laplacian(nearest_neighbor_3body(6)));
  EXPECT_LT(six.values.front().real(), -1e-9);
  const auto four = spectrum(laplacian(nearest_neighbor_3body(4)));
  // Spectrum is {0, 0, 0, 4}: marginal but nothing unstable.
  for (auto v : four.values) {
    if (std::abs(v) > 1e-9) EXPECT_GT(v.real(), 1e-9);
  }
}

TEST(PinningConfig, Validation) {
  EXPECT_THROW(PinningConfig::homogeneous({{0, 1}, {1, 2}}), OverlapError);
  EXPECT_THROW(PinningConfig({PinningEdge{{0, 1}, {1.0, 0.0}}}), WeightError);
  EXPECT_THROW(PinningConfig({PinningEdge{{0, 1}, {0.6, 0.6}}}), WeightError);
  EXPECT_THROW(PinningConfig({PinningEdge{{}, {}}}), SizeError);
  EXPECT_THROW(PinningConfig::homogeneous({{0}}, -1.0), WeightError);
  EXPECT_THROW(PinningConfig::homogeneous({{0}, {5}}).check_nodes(3), IndexError);
}

TEST(PinningMatrix, HomogeneousPairBlock) {
  const auto p = pinning_matrix(PinningConfig::homogeneous({{0, 1}}), 3);
  Eigen::Matrix3d expected;
  expected << 0.5, 0.5, 0, 0.5, 0.5, 0, 0, 0, 0;
  EXPECT_EQ(p.matrix, Eigen::MatrixXd(expected));
}

TEST(PinningMatrix, SingletonsArePermutedFirst) {
  const auto p = pinning_matrix(PinningConfig::singletons(std::vector<NodeId>{0, 2}), 3);
  EXPECT_EQ(p.permutation, (std::vector<NodeId>{0, 2, 1}));
  EXPECT_EQ(p.matrix, Eigen::MatrixXd(Eigen::Vector3d(1, 1, 0).asDiagonal()));
}

TEST(PinningMatrix, SpectrumIsMOnesAndZeros) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto cfg = testing::random_pinning(rng, 8);
    const auto s = spectrum(pinning_matrix(cfg, 8).matrix);
    std::vector<Complex> expected(8, 0.0);
    for (std::size_t k = 0; k < cfg.size(); ++k) expected[7 - k] = 1.0;
    expect_spectrum(s, expected, 1e-9);
  }
}

TEST(Transform, DiagonalisesPinningMatrix) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(uniform_index(rng, 7));
    const auto cfg = testing::random_pinning(rng, n);
    for (auto basis : {NullBasis::Chain, NullBasis::Star}) {
      const auto t = build_transform(cfg, n, basis);
      const auto p = pinning_matrix(cfg, n).matrix;
      const Eigen::MatrixXd d = t.fullPivLu().solve(p * t);
      Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
      diag.head(cfg.size()).setOnes();
      EXPECT_LE((d - Eigen::MatrixXd(diag.asDiagonal())).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST(Transform, NullVectorIsBetaOrthogonal) {
  const PinningConfig cfg({PinningEdge{{0, 1}, {0.75, 0.25}}});
  const auto t = build_transform(cfg, 2);
  EXPECT_DOUBLE_EQ(t(0, 1), 1.0 / 0.75);
  EXPECT_DOUBLE_EQ(t(1, 1), -1.0 / 0.25);
  EXPECT_NEAR(0.75 * t(0, 1) + 0.25 * t(1, 1), 0.0, 1e-15);
}

TEST(Transform, HomogeneousPairColumnsAreOnesAndDifference) {
  const auto t = build_transform(PinningConfig::homogeneous({{0, 1}}), 2);
  EXPECT_EQ(t(0, 0), 1.0);
  EXPECT_EQ(t(1, 0), 1.0);
  // Proportional to e1 - e2 (scaled by 1/beta = 2).
  EXPECT_EQ(t(0, 1), -t(1, 1));
  EXPECT_GT(t(0, 1), 0.0);
}

TEST(ReducedBlock, ThreeNodePinNode3) {
  const auto block = reduced_block(laplacian(three_node()), PinningConfig::singletons(std::vector<NodeId>{2}));
  Eigen::Matrix2d l22;
  l22 << 1, 0, -1, 0.5;
  EXPECT_LE((block.l22 - l22).cwiseAbs().maxCoeff(), 1e-12);
  expect_spectrum(block.spectrum, {0.5, 1.0}, 1e-9);
}

TEST(ReducedBlock, ThreeNodePinNode1) {
  const auto block = reduced_block(laplacian(three_node()), PinningConfig::singletons(std::vector<NodeId>{0}));
  Eigen::Matrix2d l22;
  l22 << 0.5, 0.5, 0.5, 0.5;
  EXPECT_LE((block.l22 - l22).cwiseAbs().maxCoeff(), 1e-12);
  expect_spectrum(block.spectrum, {0.0, 1.0}, 1e-9);
}

TEST(ReducedBlock, AllPinnedIsEmpty) {
  const auto block = reduced_block(laplacian(three_node()), PinningConfig::singletons(std::vector<NodeId>{0, 1, 2}));
  EXPECT_EQ(block.l22.rows(), 0);
  EXPECT_TRUE(block.spectrum.empty());
}

TEST(ReducedBlock, SpectrumIndependentOfNullBasis) {
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(uniform_index(rng, 6));
    const auto g = testing::random_hypergraph(rng, n, 2 * n, 4);
    const auto cfg = testing::random_pinning(rng, n);
    const auto a = reduced_block(laplacian(g), cfg, NullBasis::Chain);
    const auto b = reduced_block(laplacian(g), cfg, NullBasis::Star);
    expect_spectrum(a.spectrum, b.spectrum.values, 1e-7);
  }
}

TEST(ReducedBlock, GroundedLaplacianEquivalence) {
  Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(uniform_index(rng, 6));
    const auto g = testing::random_hypergraph(rng, n, 2 * n, 4);
    std::vector<NodeId> nodes(n);
    std::iota(nodes.begin(), nodes.end(), 0);
    shuffle(nodes, rng);
    nodes.resize(1 + uniform_index(rng, n - 1));
    const auto l = laplacian(g);
    const auto block = reduced_block(l, PinningConfig::singletons(nodes));
    const auto grounded = testing::eigenvalues(remove_rows_cols(l, nodes));
    expect_spectrum(block.spectrum, grounded, 1e-9);
  }
}

TEST(CandidateReduction, SubsetsMatchDirectReduction) {
  Rng rng(16);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + static_cast<int>(uniform_index(rng, 5));
    const auto g = testing::random_hypergraph(rng, n, 2 * n, 4);
    const auto candidates = testing::random_pinning(rng, n);
    const auto l = laplacian(g);
    const CandidateReduction reduction(l, candidates);
    std::vector<int> chosen;
    for (int c = 0; c < static_cast<int>(candidates.size()); ++c) {
      if (uniform01(rng) < 0.5) chosen.push_back(c);
    }
    const auto direct = reduced_block(l, candidates.subset(chosen));
    expect_spectrum(reduction.reduced_spectrum(chosen), direct.spectrum.values, 1e-7);
  }
}

TEST(MKappa, ZeroGainIsLaplacianPermuted) {
  const auto l = laplacian(three_node());
  const auto cfg = PinningConfig::singletons(std::vector<NodeId>{2});
  EXPECT_EQ(m_kappa(l, cfg, 0.0), permute(l, pinned_first_order(cfg, 3)));
}

TEST(MKappa, ThreeNodeLargeGain) {
  const auto m = m_kappa(laplacian(three_node()), PinningConfig::singletons(std::vector<NodeId>{2}), 1e6);
  const auto s = spectrum(m);
  EXPECT_GT(s.values.back().real(), 1e5);
  expect_spectrum(Spectrum{{s.values[0], s.values[1]}}, {0.5, 1.0}, 1e-3);
}

TEST(MKappa, Fig2bIsStableAtGainFive) {
  const auto cfg = PinningConfig::homogeneous({{0, 1}, {2, 3}, {4, 6}}, 5.0);
  for (auto v : spectrum(m_kappa(laplacian(nearest_neighbor_3body(7)), cfg, 5.0)).values) {
    EXPECT_GT(v.real(), 0.0);
  }
}

TEST(MKappa, LargeGainLimit) {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + static_cast<int>(uniform_index(rng, 6));
    const auto g = testing::random_hypergraph(rng, n, 2 * n, 4);
    const auto cfg = testing::random_pinning(rng, n);
    const auto l = laplacian(g);
    const double kappa = 1e6;
    const auto s = spectrum(m_kappa(l, cfg, kappa));
    std::vector<Complex> rest;
    int large = 0;
    for (auto v : s.values) {
      if (v.real() > kappa / 2) {
        ++large;
      } else {
        rest.push_back(v);
      }
    }
    EXPECT_EQ(large, static_cast<int>(cfg.size()));
    expect_spectrum(reduced_block(l, cfg).spectrum, rest, 1e-3);
  }
}

TEST(MKappa, EigenvaluesAreRootsOfCharacteristicPolynomial) {
  Rng rng(18);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(uniform_index(rng, 5));
    const auto g = testing::random_hypergraph(rng, n, 2 * n, 3);
    const auto cfg = testing::random_pinning(rng, n);
    const auto l = laplacian(g);
    const double radius = spectrum(l).values.empty() ? 1.0 : std::abs(spectrum(l).values.back()) + 1.0;
    const auto m = m_kappa(l, cfg, 2.0 * radius + 1.0);
    const double scale = std::pow(m.norm(), n);
    for (auto v : spectrum(m).values) {
      const Eigen::MatrixXcd shifted = m.cast<Complex>() - v * Eigen::MatrixXcd::Identity(n, n);
      EXPECT_LE(std::abs(shifted.partialPivLu().determinant()), 1e-6 * scale);
    }
  }
}

TEST(Spectrum, KnownMatrices) {
  Eigen::Matrix2d a;
  a << 1, 0, -1, 0.5;
  expect_spectrum(spectrum(a), {0.5, 1.0}, 1e-12);
  expect_spectrum(spectrum(Eigen::MatrixXd::Identity(3, 3)), {1.0, 1.0, 1.0}, 1e-12);
  Eigen::Matrix2d companion;
  companion << 0, 1, 1, 1;
  const double phi = std::numbers::phi;
  expect_spectrum(spectrum(companion), {1.0 - phi, phi}, 1e-12);
}

TEST(Spectrum, SortedAndConjugateClosed) {
  Eigen::Matrix3d rot;
  rot << 0, -1, 0, 1, 0, 0, 0, 0, 2;
  const auto s = spectrum(rot);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_NEAR(s.values[0].imag(), -1.0, 1e-12);
  EXPECT_NEAR(s.values[1].imag(), 1.0, 1e-12);
  EXPECT_NEAR(s.values[2].real(), 2.0, 1e-12);
}

TEST(MatchEigenvalues, GreedyMinimalDistance) {
  const auto m = match_eigenvalues({1.0, 2.0, 3.0}, {3.1, 0.9, 2.0});
  EXPECT_NEAR(m.max_distance, 0.1, 1e-12);
  EXPECT_THROW(match_eigenvalues({1.0}, {1.0, 2.0}), SizeError);
}

}  // namespace
}  // namespace hyperpin
