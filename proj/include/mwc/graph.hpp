#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

namespace mwc {

using Vertex = int;

struct Edge {
  Vertex u;
  Vertex v;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Subset of the vertices 0..n-1 of a host graph, packed one bit per vertex.
/// For hosts with at most 64 vertices the set is a single machine word and
/// `mask()` exposes it directly to the enumeration code.
class VertexSet {
public:
  VertexSet() = default;
  explicit VertexSet(int host_size);

  static VertexSet from_members(int host_size, std::span<const Vertex> members);
  static VertexSet from_mask(int host_size, std::uint64_t mask);
  static VertexSet full(int host_size);

  int host_size() const noexcept { return n_; }
  int size() const noexcept;
  bool empty() const noexcept { return size() == 0; }
  bool contains(Vertex v) const noexcept;
  /// Least member, or -1 for the empty set.
  Vertex least() const noexcept;

  void insert(Vertex v);
  void erase(Vertex v);

  std::vector<Vertex> members() const;
  std::uint64_t mask() const;

  VertexSet complement() const;
  bool is_subset_of(const VertexSet& other) const noexcept;
  bool intersects(const VertexSet& other) const noexcept;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Simple undirected graph on 0..n-1: no loops, no parallel edges.
/// Immutable after construction.
class Graph {
public:
  Graph() = default;
  explicit Graph(int n);
  /// Validates and normalizes: endpoints in range, no loops, no duplicates
  /// (in either orientation). Throws Error(invalid_set) otherwise.
  Graph(int n, std::span<const Edge> edges);

  int n() const noexcept { return static_cast<int>(adj_.size()); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  /// Edges with u < v, sorted.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  bool adjacent(Vertex u, Vertex v) const;

  /// Per-vertex neighbor bitmasks; only valid for n <= 64.
  std::vector<std::uint64_t> adjacency_masks() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n() == b.n() && a.edges_ == b.edges_;
  }

private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

struct BoundaryResult {
  std::vector<Edge> edges;
  std::size_t count = 0;
};

/// Induced subgraph together with the map from its vertices to the host's.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_host;
};

/// Ordered list of k >= 1 nonempty, pairwise disjoint blocks covering V.
class KPartition {
public:
  KPartition(int host_size, std::vector<VertexSet> blocks);
  /// Builds from a block label per vertex; labels must be 0..k-1, all used.
  static KPartition from_labels(std::span<const int> labels);

  int host_size() const noexcept { return n_; }
  int k() const noexcept { return static_cast<int>(blocks_.size()); }
  const std::vector<VertexSet>& blocks() const noexcept { return blocks_; }
  const VertexSet& block(int i) const { return blocks_.at(i); }

private:
  int n_;
  std::vector<VertexSet> blocks_;
};

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

BoundaryResult boundary_edges(const Graph& g, const VertexSet& f);
std::size_t boundary_count(const Graph& g, const VertexSet& f);

/// Edges of G[outer] joining inner to outer - inner.
std::size_t relative_boundary(const Graph& g, const VertexSet& inner, const VertexSet& outer);

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s);
InducedSubgraph complement_subgraph(const Graph& g, const VertexSet& s);

/// Components sorted by least vertex.
std::vector<VertexSet> connected_components(const Graph& g);
bool is_connected(const Graph& g);

/// Hop distances from src; unreachable vertices get kUnreachable.
std::vector<int> bfs_distances(const Graph& g, Vertex src);

int max_degree(const Graph& g);

/// Edge-list text: "n m" followed by m lines "u v" with 0 <= u < v < n.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

} // namespace mwc
