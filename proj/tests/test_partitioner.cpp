#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mwc/error.hpp"
#include "mwc/families.hpp"
#include "mwc/partitioner.hpp"
#include "oracles.hpp"

using namespace mwc;

namespace {

VertexSet S(int n, std::initializer_list<Vertex> members) {
  std::vector<Vertex> m(members);
  return VertexSet::from_members(n, m);
}

Graph triangles(int m) { return disjoint_union(std::vector<Graph>(m, complete_graph(3))); }

CutOracleMode sweep_mode() {
  CutOracleMode m;
  m.mode = CutMode::sweep;
  return m;
}

} // namespace

TEST(CutMode, Parse) {
  EXPECT_EQ(parse_cut_mode("exact"), CutMode::exact);
  EXPECT_EQ(parse_cut_mode("sweep"), CutMode::sweep);
  EXPECT_THROW(parse_cut_mode("fast"), Error);
}

TEST(BestCut, ExactExamples) {
  const CutWitness c6 = best_cut(cycle_graph(6), VertexSet::full(6), {});
  EXPECT_EQ(c6.ratio, Ratio(2, 3));
  EXPECT_EQ(c6.set.size(), 3);

  const CutWitness tri = best_cut(triangles(2), S(6, {0, 1, 2}), {});
  EXPECT_EQ(tri.ratio, Ratio(2));
  EXPECT_EQ(tri.set, S(6, {0}));

  const CutWitness whole = best_cut(triangles(2), VertexSet::full(6), {});
  EXPECT_EQ(whole.ratio, Ratio(0));
  EXPECT_EQ(whole.set, S(6, {0, 1, 2}));

  try {
    best_cut(cycle_graph(6), S(6, {3}), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unsplittable);
  }
}

TEST(SweepCut, Examples) {
  const CutWitness c6 = sweep_cut(cycle_graph(6));
  EXPECT_EQ(c6.ratio, Ratio(2, 3));
  EXPECT_LE(c6.ratio.to_double(), 2.0);

  const CutWitness p2 = sweep_cut(path_graph(2));
  EXPECT_EQ(p2.ratio, Ratio(1));
  EXPECT_EQ(p2.set.size(), 1);

  const CutWitness tri = sweep_cut(triangles(2));
  EXPECT_EQ(tri.ratio, Ratio(0));
  EXPECT_EQ(tri.set.size(), 3);
}

TEST(SweepCut, RespectsCheegerUpperBound) {
  std::mt19937_64 rng(45);
  for (int t = 0; t < 60; ++t) {
    const int n = 3 + static_cast<int>(rng() % 20);
    const Graph g = oracle::random_graph(rng, n, 0.35);
    if (!is_connected(g)) continue;
    const CutWitness w = sweep_cut(g);
    const double lambda2 = spectrum(g).lambda(2);
    EXPECT_LE(w.ratio.to_double(), std::sqrt(2.0 * max_degree(g) * lambda2) + 1e-7);
    EXPECT_LE(2 * w.set.size(), n);
    EXPECT_GE(w.set.size(), 1);
    EXPECT_EQ(w.ratio, Ratio(boundary_count(g, w.set), w.set.size()));
    EXPECT_GE(w.ratio, expansion_exact(g).ratio);
  }
}

TEST(Theorem2Partition, TwoTriangles) {
  const Graph g = triangles(2);
  const PartitionResult r = theorem2_partition(g, 2);
  ASSERT_EQ(r.partition.k(), 2);
  EXPECT_EQ(r.partition.block(0), S(6, {0, 1, 2}));
  EXPECT_EQ(r.partition.block(1), S(6, {3, 4, 5}));
  ASSERT_EQ(r.trace.divisions.size(), 1u);
  EXPECT_EQ(r.trace.nodes[r.trace.divisions[0]].address, "");

  const Theorem2Conclusion c = evaluate_theorem2(g, r);
  EXPECT_EQ(c.h_k, Ratio(0));
  EXPECT_EQ(c.h_k1, Ratio(2));
  EXPECT_TRUE(c.hypothesis);
  EXPECT_EQ(c.min_block_h, Ratio(2));
  EXPECT_EQ(c.lower_target, Ratio(2, 27));
  EXPECT_EQ(c.max_block_ratio, Ratio(0));
  EXPECT_TRUE(c.lower_ok);
  EXPECT_TRUE(c.upper_ok);
}

TEST(Theorem2Partition, ThreeTriangles) {
  const Graph g = triangles(3);
  const PartitionResult r = theorem2_partition(g, 3);
  ASSERT_EQ(r.partition.k(), 3);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(r.partition.block(i), S(9, {3 * i, 3 * i + 1, 3 * i + 2}));
  const Theorem2Conclusion c = evaluate_theorem2(g, r);
  EXPECT_TRUE(c.hypothesis);
  EXPECT_EQ(c.max_block_ratio, Ratio(0));
  EXPECT_TRUE(c.lower_ok && c.upper_ok);
}

TEST(Theorem2Partition, KOneIsTheWholeGraph) {
  const PartitionResult r = theorem2_partition(cycle_graph(5), 1);
  EXPECT_EQ(r.partition.k(), 1);
  EXPECT_TRUE(r.trace.divisions.empty());
  EXPECT_EQ(r.trace.nodes.size(), 1u);
}

TEST(Theorem2Partition, Errors) {
  try {
    theorem2_partition(cycle_graph(4), 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_k);
  }
  // K_2 plus isolated vertex: after splitting off the isolated vertex the
  // singleton has infinite key, so the edge is split next, then only
  // singletons remain.
  const std::vector<Edge> edges{{0, 1}};
  const Graph g(3, edges);
  EXPECT_EQ(theorem2_partition(g, 3).partition.k(), 3);
}

TEST(Theorem2Partition, SelectsMinimumKeyPiece) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 30; ++t) {
    const int n = 4 + static_cast<int>(rng() % 8);
    const Graph g = oracle::random_graph(rng, n, 0.4);
    const int k = 2 + static_cast<int>(rng() % 3);
    const PartitionResult r = theorem2_partition(g, k);
    EXPECT_EQ(r.partition.k(), k);
    // At each division, the divided node had the least key among the
    // undivided nodes that existed then.
    for (std::size_t step = 0; step < r.trace.divisions.size(); ++step) {
      const auto& chosen = r.trace.nodes[r.trace.divisions[step]];
      for (std::size_t i = 0; i < r.trace.nodes.size(); ++i) {
        const auto& other = r.trace.nodes[i];
        const bool existed = i == 0 || r.trace.nodes[other.parent].division < static_cast<int>(step);
        const bool open = !other.divided() || other.division >= static_cast<int>(step);
        if (existed && open) EXPECT_LE(chosen.key(), other.key());
      }
      EXPECT_EQ(chosen.key(), expansion_exact(induced_subgraph(g, chosen.vertices).graph).ratio);
    }
  }
}

TEST(Theorem2Partition, SweepModeRuns) {
  const Graph g = connected_random_regular(64, 3, 1).graph;
  const PartitionResult r = theorem2_partition(g, 2, sweep_mode());
  EXPECT_EQ(r.partition.k(), 2);
  EXPECT_EQ(r.trace.mode, CutMode::sweep);
  EXPECT_THROW(claim_check(g, r.trace), Error);
}

TEST(ClaimCheck, TwoTrianglesIsTrivial) {
  const Graph g = triangles(2);
  const auto entries = claim_check(g, theorem2_partition(g, 2).trace);
  for (const auto& e : entries) {
    EXPECT_EQ(e.lhs, 0u);
    EXPECT_TRUE(e.ok);
  }
}

TEST(ClaimCheck, ChainOfTriangles) {
  const std::vector<Graph> hs(4, complete_graph(3));
  const Graph g = chain(hs).graph;
  const PartitionResult r = theorem2_partition(g, 3);
  const auto entries = claim_check(g, r.trace);
  EXPECT_FALSE(entries.empty());
  for (const auto& e : entries) EXPECT_TRUE(e.ok);
}

TEST(ClaimCheck, HoldsOnRandomGraphs) {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 40; ++t) {
    const int n = 6 + static_cast<int>(rng() % 8);
    const Graph g = oracle::random_graph(rng, n, 0.3);
    const PartitionResult r = theorem2_partition(g, 4);
    for (const auto& e : claim_check(g, r.trace)) {
      EXPECT_TRUE(e.ok) << "node " << r.trace.nodes[e.node].address << " p=" << e.p;
      EXPECT_EQ(e.q, e.p + 1);
      EXPECT_LT(e.q, e.s);
    }
  }
}

TEST(ClaimCheck, RejectsMalformedTraces) {
  const Graph g = triangles(2);
  PartitionTrace t = theorem2_partition(g, 3).trace;
  t.nodes[1].parent = 5;
  try {
    claim_check(g, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::malformed_trace);
  }
  PartitionTrace u = theorem2_partition(g, 3).trace;
  u.nodes[2].vertices.insert(0);
  u.nodes[0].vertices.erase(0);
  EXPECT_THROW(claim_check(g, u), Error);
}

TEST(Theorem2, ConclusionsHoldWhenHypothesisHolds) {
  std::mt19937_64 rng(2);
  int applicable = 0;
  for (int t = 0; t < 80; ++t) {
    const int n = 4 + static_cast<int>(rng() % 6);
    const Graph g = oracle::random_graph(rng, n, 0.25);
    for (int k = 1; k <= 3 && k + 1 <= n; ++k) {
      const Ratio hk = kway_expansion_exact(g, k).value;
      const Ratio hk1 = kway_expansion_exact(g, k + 1).value;
      if (!(hk1 / checked_pow(3, k + 1) > hk)) continue;
      ++applicable;
      const Theorem2Conclusion c = evaluate_theorem2(g, theorem2_partition(g, k));
      EXPECT_TRUE(c.lower_ok);
      EXPECT_TRUE(c.upper_ok);
    }
  }
  EXPECT_GT(applicable, 10);
}
