#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mwc/graph.hpp"

namespace mwc {

/// SplitMix64: state += 0x9E3779B97F4A7C15, then the xor-shift-multiply
/// finalizer with 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB. Bounded draws use
/// rejection, so streams are identical on every platform.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t uniform(std::uint64_t bound);

private:
  std::uint64_t state_;
};

Graph cycle_graph(int n);
Graph path_graph(int n);
Graph complete_graph(int n);
Graph edgeless_graph(int n);
Graph petersen_graph();
/// Components renumbered consecutively in the given order.
Graph disjoint_union(const std::vector<Graph>& parts);
/// Pairing model with rejection of loops and multi-edges, up to 1000 draws.
Graph random_regular(int n, int d, std::uint64_t seed);
/// H plus one vertex (index |V_H|) adjacent to all of H.
Graph apex(const Graph& h);

struct ChainAnchor {
  Vertex x = 0; // endpoint towards the previous block
  Vertex y = 0; // endpoint towards the next block

  bool operator==(const ChainAnchor&) const = default;
};

struct ChainGraph {
  Graph graph;
  std::vector<VertexSet> blocks;
  std::vector<Edge> bridges;
};

/// Disjoint union of H_1..H_n plus bridges x_m -- y_{m-1}, m = 2..n. Missing
/// anchors default to vertex 0 of each block.
ChainGraph chain(const std::vector<Graph>& hs, const std::vector<ChainAnchor>& anchors = {});
/// Anchors drawn uniformly per block from the seeded stream (x then y).
std::vector<ChainAnchor> random_anchors(const std::vector<Graph>& hs, std::uint64_t seed);

/// random_regular with the seed incremented until the draw is connected.
struct ConnectedDraw {
  Graph graph;
  std::uint64_t seed = 0;
  int retries = 0;
};
ConnectedDraw connected_random_regular(int n, int d, std::uint64_t seed, int max_retries = 100);

/// Parsed family description. Grammar (whitespace ignored):
///
///   spec  := [count] name [ '(' arg {',' arg} ')' ]
///   arg   := key '=' int | int | spec [ '*' int ]
///
/// Names: cycle, path, complete, edgeless (positional n or n=), petersen,
/// rr(n=,d=,seed=), apex(spec), union(spec, ...), chain(spec, ...; anchors=seed).
/// Shorthands k3, c6, p4, e3 stand for complete(3), cycle(6), path(4),
/// edgeless(3); a leading count makes a disjoint union ("2k3"), and spec*m
/// inside union/chain repeats an argument ("chain(k3*8)").
struct FamilySpec {
  enum class Kind { cycle, path, complete, edgeless, petersen, disjoint_union, random_regular, apex, chain };

  Kind kind = Kind::edgeless;
  int n = 0;
  int d = 0;
  std::uint64_t seed = 0;
  std::vector<FamilySpec> parts;
  std::optional<std::uint64_t> anchor_seed;
  std::string text;
};

FamilySpec parse_family(std::string_view text);
Graph generate(const FamilySpec& spec);
/// For chain specs: the graph plus block sets; other kinds give one block.
ChainGraph generate_with_blocks(const FamilySpec& spec);

} // namespace mwc
