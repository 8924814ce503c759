#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mwc/graph.hpp"
#include "mwc/ratio.hpp"

namespace mwc {

/// Enumeration limits for the exact routines. Exceeding a cap is an error,
/// never a silent fallback.
struct ExactCaps {
  /// Largest vertex count for subset enumeration (h of a graph or piece).
  int subset_n = 24;
  /// Vertex count up to which any k-partition enumeration is allowed.
  int partition_n = 14;
  /// Beyond partition_n, enumeration is still allowed while the number of
  /// k-block set partitions S(n, k) stays within this count.
  std::uint64_t partition_count = std::uint64_t{1} << 24;
};

/// A set F with 1 <= |F| <= floor(n/2) and its boundary ratio. An empty set
/// with infinite ratio stands for "no admissible F" (graphs with n < 2).
struct CutWitness {
  VertexSet set;
  std::size_t boundary = 0;
  Ratio ratio = Ratio::infinity();
};

struct KwayWitness {
  KPartition partition;
  std::vector<Ratio> block_ratios;
  Ratio value;
};

struct RatioProfile {
  std::vector<Ratio> block_ratios;
  Ratio max;
};

/// h(G). Minimizes |dF|/|F| over 1 <= |F| <= floor(n/2); ties go to the
/// smaller |F|, then to the lexicographically smallest sorted member list.
/// When |F| = n/2 exactly only sets holding vertex 0 are considered.
CutWitness expansion_exact(const Graph& g, const ExactCaps& caps = {});

/// h_k(G) by enumerating restricted-growth strings with exactly k blocks.
/// Among optimal partitions the first one in RGS order is returned.
KwayWitness kway_expansion_exact(const Graph& g, int k, const ExactCaps& caps = {});

RatioProfile boundary_ratio_profile(const Graph& g, const KPartition& p);

/// Number of set partitions of n items into k blocks, saturating at 2^64-1.
std::uint64_t stirling2(int n, int k);

/// Throws CapExceeded unless h_k of an n-vertex graph may be enumerated.
void require_partition_budget(int n, int k, const ExactCaps& caps);

/// Exact h of the induced subgraph G[s] for n <= 64, with the same tie-break
/// as expansion_exact applied in local (order-preserving) indices. `adj` is
/// Graph::adjacency_masks(). The returned set uses host indices.
struct MaskCut {
  std::uint64_t set = 0;
  std::uint32_t boundary = 0;
  Ratio ratio = Ratio::infinity();
};
MaskCut min_cut_in_mask(std::span<const std::uint64_t> adj, std::uint64_t s,
                        const ExactCaps& caps = {});

/// Boundary of f inside the induced subgraph on `within`.
std::uint32_t mask_boundary(std::span<const std::uint64_t> adj, std::uint64_t f,
                            std::uint64_t within);

} // namespace mwc
