#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "mwc/error.hpp"
#include "mwc/families.hpp"
#include "mwc/graph.hpp"
#include "mwc/ratio.hpp"
#include "oracles.hpp"

using namespace mwc;

namespace {

VertexSet S(int n, std::initializer_list<Vertex> members) {
  std::vector<Vertex> m(members);
  return VertexSet::from_members(n, m);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::parse_error;
}

} // namespace

TEST(Ratio, ReducesAndCompares) {
  EXPECT_EQ(Ratio(4, 6), Ratio(2, 3));
  EXPECT_EQ(Ratio(0, 5), Ratio(0));
  EXPECT_EQ(Ratio(4, 6).to_string(), "2/3");
  EXPECT_EQ(Ratio(2).to_string(), "2/1");
  EXPECT_LT(Ratio(2, 3), Ratio(1));
  EXPECT_LT(Ratio(1000000), Ratio::infinity());
  EXPECT_EQ(Ratio::infinity(), Ratio::infinity());
  EXPECT_EQ(Ratio::infinity().to_string(), "inf");
}

TEST(Ratio, Arithmetic) {
  EXPECT_EQ(Ratio(1, 2) + Ratio(1, 3), Ratio(5, 6));
  EXPECT_EQ(Ratio(2, 3) * 3, Ratio(2));
  EXPECT_EQ(Ratio(2) / 27, Ratio(2, 27));
  EXPECT_EQ(checked_pow(3, 4), 81u);
  EXPECT_TRUE((Ratio::infinity() + Ratio(1)).is_infinite());
}

TEST(Ratio, ParseRoundTrip) {
  for (Ratio r : {Ratio(0), Ratio(2, 3), Ratio(7), Ratio(123456789, 1000), Ratio::infinity()}) {
    EXPECT_EQ(Ratio::parse(r.to_string()), r);
  }
  EXPECT_EQ(Ratio::parse("6"), Ratio(6));
  EXPECT_EQ(kind_of([] { Ratio::parse("1/0"); }), ErrorKind::parse_error);
  EXPECT_EQ(kind_of([] { Ratio::parse("x"); }), ErrorKind::parse_error);
}

TEST(Ratio, OrderingMatchesCrossMultiplication) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> d(0, 1000), e(1, 1000);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t a = d(rng), b = e(rng), c = d(rng), f = e(rng);
    EXPECT_EQ(Ratio(a, b) < Ratio(c, f), a * f < c * b);
    EXPECT_EQ(Ratio(a, b) == Ratio(c, f), a * f == c * b);
  }
}

TEST(Graph, RejectsLoopsAndDuplicates) {
  const std::vector<Edge> loop{{1, 1}};
  EXPECT_EQ(kind_of([&] { Graph(3, loop); }), ErrorKind::invalid_set);
  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  EXPECT_EQ(kind_of([&] { Graph(3, dup); }), ErrorKind::invalid_set);
  const std::vector<Edge> range{{0, 3}};
  EXPECT_EQ(kind_of([&] { Graph(3, range); }), ErrorKind::invalid_set);
}

TEST(Graph, AdjacencyIsSymmetric) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    const Graph g = oracle::random_graph(rng, 12, 0.3);
    std::size_t degree_sum = 0;
    for (Vertex u = 0; u < g.n(); ++u) {
      degree_sum += g.degree(u);
      for (Vertex v : g.neighbors(u)) {
        EXPECT_NE(u, v);
        EXPECT_TRUE(g.adjacent(v, u));
      }
    }
    EXPECT_EQ(degree_sum, 2 * g.edge_count());
  }
}

TEST(Graph, BoundaryEdges) {
  EXPECT_EQ(boundary_count(cycle_graph(4), S(4, {0, 1})), 2u);
  EXPECT_EQ(boundary_count(petersen_graph(), VertexSet::full(10)), 0u);
  EXPECT_EQ(boundary_count(complete_graph(4), S(4, {0})), 3u);
  const auto b = boundary_edges(cycle_graph(4), S(4, {0, 1}));
  EXPECT_EQ(b.count, b.edges.size());
  EXPECT_EQ(kind_of([] { S(4, {5}); }), ErrorKind::invalid_set);
}

TEST(Graph, BoundaryOfComplementIsTheSame) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const Graph g = oracle::random_graph(rng, 10, 0.35);
    const VertexSet f = VertexSet::from_mask(10, rng() & 0x3FF);
    EXPECT_EQ(boundary_edges(g, f).edges, boundary_edges(g, f.complement()).edges);
    EXPECT_EQ(relative_boundary(g, f, VertexSet::full(10)), boundary_count(g, f));
  }
}

TEST(Graph, RelativeBoundary) {
  EXPECT_EQ(relative_boundary(complete_graph(4), S(4, {0}), S(4, {0, 1, 2})), 2u);
  EXPECT_EQ(relative_boundary(complete_graph(4), S(4, {0, 1}), S(4, {0, 1})), 0u);
  EXPECT_EQ(relative_boundary(path_graph(3), S(3, {0}), S(3, {0, 2})), 0u);
  EXPECT_EQ(kind_of([] { relative_boundary(path_graph(3), S(3, {1}), S(3, {0, 2})); }), ErrorKind::invalid_nesting);
}

TEST(Graph, InducedSubgraphs) {
  EXPECT_EQ(induced_subgraph(complete_graph(4), S(4, {0, 1, 2})).graph, complete_graph(3));
  EXPECT_EQ(induced_subgraph(cycle_graph(6), S(6, {0, 1, 2})).graph, path_graph(3));
  const auto whole = induced_subgraph(petersen_graph(), VertexSet::full(10));
  EXPECT_EQ(whole.graph, petersen_graph());
  for (int i = 0; i < 10; ++i) EXPECT_EQ(whole.to_host[i], i);
  EXPECT_EQ(kind_of([] { induced_subgraph(cycle_graph(4), VertexSet(4)); }), ErrorKind::invalid_set);

  const Graph two = disjoint_union({complete_graph(3), complete_graph(3)});
  EXPECT_EQ(complement_subgraph(two, S(6, {0, 1, 2})).graph, complete_graph(3));
  EXPECT_EQ(complement_subgraph(cycle_graph(4), S(4, {0})).graph, path_graph(3));
  EXPECT_EQ(complement_subgraph(complete_graph(4), S(4, {0, 1})).graph, path_graph(2));
  EXPECT_EQ(kind_of([] { complement_subgraph(cycle_graph(4), VertexSet::full(4)); }), ErrorKind::empty_complement);
}

TEST(Graph, InducedSubgraphComposes) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const Graph g = oracle::random_graph(rng, 10, 0.4);
    VertexSet s = VertexSet::from_mask(10, (rng() & 0x3FF) | 1);
    VertexSet sub_t(s.size());
    const auto outer = induced_subgraph(g, s);
    for (int i = 0; i < s.size(); ++i) {
      if (rng() & 1) sub_t.insert(i);
    }
    if (sub_t.empty()) sub_t.insert(0);
    const auto inner = induced_subgraph(outer.graph, sub_t);
    VertexSet composed(10);
    for (Vertex v : sub_t.members()) composed.insert(outer.to_host[v]);
    const auto direct = induced_subgraph(g, composed);
    EXPECT_EQ(inner.graph, direct.graph);
    for (std::size_t i = 0; i < inner.to_host.size(); ++i) {
      EXPECT_EQ(outer.to_host[inner.to_host[i]], direct.to_host[i]);
    }
  }
}

TEST(Graph, Components) {
  const Graph two = disjoint_union({complete_graph(3), complete_graph(3)});
  const auto comps = connected_components(two);
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0].size(), 3);
  EXPECT_EQ(comps[1].least(), 3);
  EXPECT_EQ(connected_components(cycle_graph(6)).size(), 1u);
  EXPECT_EQ(connected_components(edgeless_graph(4)).size(), 4u);
}

TEST(Graph, Distances) {
  EXPECT_EQ(bfs_distances(cycle_graph(6), 0), (std::vector<int>{0, 1, 2, 3, 2, 1}));
  EXPECT_EQ(bfs_distances(complete_graph(4), 0), (std::vector<int>{0, 1, 1, 1}));
  const Graph two = disjoint_union({complete_graph(3), complete_graph(3)});
  EXPECT_EQ(bfs_distances(two, 0)[4], kUnreachable);
  EXPECT_THROW(bfs_distances(two, 6), Error);
}

TEST(Graph, DistanceIsAMetricOnComponents) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 40; ++t) {
    const Graph g = oracle::random_graph(rng, 8, 0.3);
    std::vector<std::vector<int>> d;
    for (Vertex v = 0; v < 8; ++v) d.push_back(bfs_distances(g, v));
    for (int x = 0; x < 8; ++x) {
      for (int y = 0; y < 8; ++y) {
        EXPECT_EQ(d[x][y], d[y][x]);
        for (int z = 0; z < 8; ++z) {
          if (d[x][y] == kUnreachable || d[y][z] == kUnreachable) continue;
          EXPECT_LE(d[x][z], d[x][y] + d[y][z]);
        }
      }
    }
  }
}

TEST(Graph, MaxDegree) {
  EXPECT_EQ(max_degree(complete_graph(4)), 3);
  EXPECT_EQ(max_degree(cycle_graph(7)), 2);
  EXPECT_EQ(max_degree(apex(edgeless_graph(4))), 4);
  EXPECT_EQ(max_degree(edgeless_graph(3)), 0);
}

TEST(Graph, EdgeListRoundTrip) {
  const Graph g = petersen_graph();
  std::stringstream ss;
  write_edge_list(ss, g);
  EXPECT_EQ(read_edge_list(ss), g);
}

TEST(Graph, EdgeListRejectsBadInput) {
  for (const char* text : {"3 1\n1 0\n", "3 2\n0 1\n0 1\n", "3 1\n1 1\n", "3 2\n0 1\n", "3 1\n0 1\n1 2\n",
                           "3 1\n0 5\n", "x\n"}) {
    std::stringstream ss(text);
    EXPECT_EQ(kind_of([&] { read_edge_list(ss); }), ErrorKind::parse_error) << text;
  }
}

TEST(KPartition, Validates) {
  EXPECT_EQ(kind_of([] { KPartition(4, {S(4, {0, 1}), S(4, {1, 2, 3})}); }), ErrorKind::invalid_partition);
  EXPECT_EQ(kind_of([] { KPartition(4, {S(4, {0, 1}), S(4, {2})}); }), ErrorKind::invalid_partition);
  EXPECT_EQ(kind_of([] { KPartition(4, {S(4, {0, 1, 2, 3}), VertexSet(4)}); }), ErrorKind::invalid_partition);
  const std::vector<int> labels{0, 1, 0, 2};
  const KPartition p = KPartition::from_labels(labels);
  EXPECT_EQ(p.k(), 3);
  EXPECT_EQ(p.block(0), S(4, {0, 2}));
}

TEST(VertexSet, LargeHosts) {
  VertexSet s(200);
  s.insert(0);
  s.insert(130);
  s.insert(199);
  EXPECT_EQ(s.size(), 3);
  EXPECT_EQ(s.members(), (std::vector<Vertex>{0, 130, 199}));
  EXPECT_EQ(s.complement().size(), 197);
  EXPECT_TRUE(s.is_subset_of(VertexSet::full(200)));
  EXPECT_THROW(s.mask(), Error);
}
