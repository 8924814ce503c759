#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "mwc/error.hpp"
#include "mwc/families.hpp"
#include "mwc/spectral.hpp"
#include "oracles.hpp"

using namespace mwc;

namespace {

constexpr double kTol = 1e-9;

VertexSet S(int n, std::initializer_list<Vertex> members) {
  std::vector<Vertex> m(members);
  return VertexSet::from_members(n, m);
}

void expect_spectrum(const Graph& g, std::vector<double> expected) {
  std::sort(expected.begin(), expected.end());
  const Spectrum s = spectrum(g);
  ASSERT_EQ(s.size(), static_cast<int>(expected.size()));
  for (int i = 0; i < s.size(); ++i) EXPECT_NEAR(s.eigenvalues[i], expected[i], kTol) << "index " << i;
}

} // namespace

TEST(Laplacian, Examples) {
  const Eigen::MatrixXd p2 = laplacian(path_graph(2));
  EXPECT_EQ(p2(0, 0), 1.0);
  EXPECT_EQ(p2(0, 1), -1.0);
  const Eigen::MatrixXd k3 = laplacian(complete_graph(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(k3(i, j), i == j ? 2.0 : -1.0);
  }
  EXPECT_EQ(laplacian(edgeless_graph(3)).norm(), 0.0);
}

TEST(Spectrum, ClosedForms) {
  expect_spectrum(complete_graph(4), {0, 4, 4, 4});
  expect_spectrum(cycle_graph(4), {0, 2, 2, 4});
  expect_spectrum(disjoint_union({complete_graph(3), complete_graph(3)}), {0, 0, 3, 3, 3, 3});
  expect_spectrum(petersen_graph(), {0, 2, 2, 2, 2, 2, 5, 5, 5, 5});
  for (int n : {5, 8, 13}) {
    std::vector<double> cyc, path;
    for (int j = 0; j < n; ++j) {
      cyc.push_back(2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * j / n));
      path.push_back(2.0 - 2.0 * std::cos(std::numbers::pi * j / n));
    }
    expect_spectrum(cycle_graph(n), cyc);
    expect_spectrum(path_graph(n), path);
  }
  expect_spectrum(edgeless_graph(3), {0, 0, 0});
}

TEST(Spectrum, AgreesWithJacobiOracle) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + static_cast<int>(rng() % 14);
    const Graph g = oracle::random_graph(rng, n, 0.3);
    const auto expected = oracle::laplacian_eigenvalues(g);
    const Spectrum s = spectrum(g);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(s.eigenvalues[i], expected[i], 1e-8);
    EXPECT_LE(s.residual, 1e-9 * std::max(1.0, laplacian(g).norm()));
  }
}

TEST(Spectrum, KernelDimensionIsComponentCount) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 30; ++t) {
    const Graph g = oracle::random_graph(rng, 10, 0.15);
    const Spectrum s = spectrum(g);
    int zeros = 0;
    for (double v : s.eigenvalues) zeros += v < 1e-8 ? 1 : 0;
    EXPECT_EQ(zeros, static_cast<int>(connected_components(g).size()));
    for (double v : s.eigenvalues) EXPECT_GE(v, 0.0);
  }
}

TEST(Spectrum, LambdaIndexing) {
  const Spectrum s = spectrum(cycle_graph(4));
  EXPECT_NEAR(s.lambda(2), 2.0, kTol);
  EXPECT_THROW(s.lambda(0), Error);
  EXPECT_THROW(s.lambda(5), Error);
}

TEST(Spectrum, DenseCap) {
  SpectralOptions opts;
  opts.dense_cap = 5;
  EXPECT_THROW(spectrum(cycle_graph(6), opts), CapExceeded);
}

TEST(Rayleigh, Examples) {
  EXPECT_NEAR(rayleigh_quotient(cycle_graph(6), TestFunction::Ones(6)), 0.0, kTol);
  TestFunction f(2);
  f << 1.0, -1.0;
  EXPECT_NEAR(rayleigh_quotient(path_graph(2), f), 2.0, kTol);
  EXPECT_NEAR(dirichlet_energy(path_graph(2), f), 4.0, kTol);
  try {
    rayleigh_quotient(path_graph(2), TestFunction::Zero(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::undefined_quotient);
  }
}

TEST(Rayleigh, EigenvectorsReproduceEigenvalues) {
  const Graph g = random_regular(12, 3, 4);
  const Spectrum s = spectrum(g);
  for (int i = 0; i < s.size(); ++i) {
    EXPECT_NEAR(rayleigh_quotient(g, s.eigenvectors.col(i)), s.eigenvalues[i], 1e-9);
  }
}

TEST(Fiedler, Examples) {
  const TestFunction p2 = fiedler_vector(path_graph(2));
  EXPECT_NEAR(p2[0], 1.0 / std::sqrt(2.0), kTol);
  EXPECT_NEAR(p2[1], -1.0 / std::sqrt(2.0), kTol);

  const TestFunction c4 = fiedler_vector(cycle_graph(4));
  EXPECT_NEAR(rayleigh_quotient(cycle_graph(4), c4), 2.0, kTol);

  const Graph two = disjoint_union({complete_graph(3), complete_graph(3)});
  const TestFunction f = fiedler_vector(two);
  EXPECT_NEAR(rayleigh_quotient(two, f), 0.0, kTol);
  EXPECT_NEAR(f.sum(), 0.0, kTol);
  EXPECT_NEAR(f.norm(), 1.0, kTol);
  EXPECT_GT(f[0], 0.0);
  for (int i = 1; i < 3; ++i) EXPECT_NEAR(f[i], f[0], kTol);
  for (int i = 3; i < 6; ++i) EXPECT_NEAR(f[i], -f[0], kTol);
}

TEST(Fiedler, OrthogonalToConstantsWithSignRule) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    const Graph g = oracle::random_graph(rng, 9, 0.4);
    const TestFunction f = fiedler_vector(g);
    EXPECT_NEAR(f.sum(), 0.0, 1e-9);
    EXPECT_NEAR(f.norm(), 1.0, 1e-9);
    EXPECT_NEAR(rayleigh_quotient(g, f), spectrum(g).lambda(2), 1e-8);
    for (int i = 0; i < f.size(); ++i) {
      if (std::abs(f[i]) > 1e-9) {
        EXPECT_GT(f[i], 0.0);
        break;
      }
    }
  }
}

TEST(Lemma2Certificate, TwoTriangles) {
  const Graph two = disjoint_union({complete_graph(3), complete_graph(3)});
  const KPartition p(6, {S(6, {0, 1, 2}), S(6, {3, 4, 5})});
  const Lemma2Certificate c = lemma2_certificate(two, p);
  ASSERT_EQ(c.psi.size(), 2u);
  EXPECT_EQ(c.psi[1], (std::vector<std::int64_t>{3, 3, 3, -3, -3, -3}));
  EXPECT_TRUE(c.orthogonal);
  EXPECT_NEAR(c.lower_bound, 3.0, kTol);
  EXPECT_NEAR(spectrum(two).lambda(3), 3.0, kTol);
}

TEST(Lemma2Certificate, CycleSplit) {
  const KPartition p(4, {S(4, {0, 1}), S(4, {2, 3})});
  const Lemma2Certificate c = lemma2_certificate(cycle_graph(4), p);
  EXPECT_EQ(c.psi[1], (std::vector<std::int64_t>{2, 2, -2, -2}));
  EXPECT_NEAR(c.lower_bound, 2.0, kTol);
  EXPECT_NEAR(spectrum(cycle_graph(4)).lambda(3), 2.0, kTol);
}

TEST(Lemma2Certificate, SingleBlock) {
  const Graph g = petersen_graph();
  const Lemma2Certificate c = lemma2_certificate(g, KPartition(10, {VertexSet::full(10)}));
  EXPECT_EQ(c.psi.size(), 1u);
  EXPECT_NEAR(c.lower_bound, spectrum(g).lambda(2), kTol);
}

TEST(Lemma2Certificate, OrthogonalForRandomPartitions) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 50; ++t) {
    const int n = 3 + static_cast<int>(rng() % 8);
    const int k = 1 + static_cast<int>(rng() % (n - 1));
    const Graph g = oracle::random_graph(rng, n, 0.5);
    const auto labels = oracle::random_surjective_labels(rng, n, k);
    const Lemma2Certificate c = lemma2_certificate(g, KPartition::from_labels(labels));
    EXPECT_TRUE(c.orthogonal);
    EXPECT_EQ(static_cast<int>(c.psi.size()), k);
    EXPECT_GE(spectrum(g).lambda(k + 1), c.lower_bound - 1e-7);
  }
}

TEST(BlockLambda2, SingletonIsZero) {
  EXPECT_EQ(block_lambda2(complete_graph(4), S(4, {2})), 0.0);
  EXPECT_NEAR(block_lambda2(complete_graph(4), S(4, {0, 1, 2})), 3.0, kTol);
}

TEST(RemarkBound, FourTriangles) {
  const std::vector<Graph> hs(4, complete_graph(3));
  const ChainGraph cg = chain(hs);
  const RemarkBound b = remark_upper_bound(cg.graph, cg.blocks, 2);
  EXPECT_EQ(b.block_indices, (std::vector<int>{1, 3}));
  EXPECT_TRUE(b.orthonormal);
  EXPECT_TRUE(b.within_caps);
  EXPECT_LE(b.bound, 2.0 / 3.0 + kTol);
  EXPECT_LE(spectrum(cg.graph).lambda(2), b.bound + 1e-7);
}

TEST(RemarkBound, EnergyCountsBridges) {
  const std::vector<Graph> hs(3, complete_graph(4));
  const ChainGraph cg = chain(hs);
  const RemarkBound b = remark_upper_bound(cg.graph, cg.blocks, 1);
  // The middle block touches two bridges.
  EXPECT_NEAR(b.bound, 2.0 / 4.0, kTol);
}

TEST(RemarkBound, NoBridgesMeansZero) {
  const Graph g = disjoint_union({complete_graph(3), complete_graph(3)});
  const std::vector<VertexSet> blocks{S(6, {0, 1, 2}), S(6, {3, 4, 5})};
  EXPECT_NEAR(remark_upper_bound(g, blocks, 1).bound, 0.0, kTol);
}

TEST(RemarkBound, RejectsBadBlocks) {
  const Graph g = cycle_graph(6);
  EXPECT_THROW(remark_upper_bound(g, {S(6, {0, 1}), S(6, {1, 2})}, 1), Error);
  EXPECT_THROW(remark_upper_bound(g, {S(6, {0, 1}), S(6, {2, 3})}, 2), Error);
  EXPECT_THROW(remark_upper_bound(g, {S(6, {0, 1}), S(6, {2, 3})}, 0), Error);
  EXPECT_THROW(remark_upper_bound(g, {S(5, {0, 1}), S(5, {2, 3})}, 1), Error);
}
