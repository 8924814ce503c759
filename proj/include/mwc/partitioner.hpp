#pragma once

#include <array>
#include <string>
#include <vector>

#include "mwc/expansion.hpp"
#include "mwc/graph.hpp"
#include "mwc/ratio.hpp"
#include "mwc/spectral.hpp"

namespace mwc {

enum class CutMode { exact, sweep };

std::string_view to_string(CutMode mode);
CutMode parse_cut_mode(std::string_view text);

struct CutOracleMode {
  CutMode mode = CutMode::exact;
  ExactCaps caps;
  SpectralOptions spectral;
};

/// A piece H^{a_1...a_m} of the recursive division. The root (address "")
/// is G itself; child "...0" is the cut set, child "...1" its complement.
struct TraceNode {
  std::string address;
  VertexSet vertices;
  int parent = -1;
  std::array<int, 2> children{-1, -1};
  /// Best cut of the piece within its own induced subgraph; its ratio is the
  /// selection key (exact h in exact mode, sweep ratio in sweep mode).
  CutWitness cut;
  /// Step index (0-based) at which this piece was divided, or -1.
  int division = -1;

  const Ratio& key() const { return cut.ratio; }
  bool divided() const { return division >= 0; }
};

struct PartitionTrace {
  CutMode mode = CutMode::exact;
  /// Nodes in creation order; nodes[0] is the root.
  std::vector<TraceNode> nodes;
  /// divisions[i] is the node index of D^{i+1}.
  std::vector<int> divisions;
  /// Node indices of the final blocks, in the same order as the partition.
  std::vector<int> leaves;
};

struct PartitionResult {
  KPartition partition;
  PartitionTrace trace;
};

/// Best cut of G[h] in host indices, with |F| <= floor(|h| / 2).
CutWitness best_cut(const Graph& g, const VertexSet& h, const CutOracleMode& mode);

/// Fiedler sweep over all threshold cuts, each scored by boundary over the
/// smaller side, which is returned as F. A disconnected graph yields its
/// smallest component (ratio 0) instead. The result satisfies
/// ratio <= sqrt(2 deg(G) lambda_2(G)).
CutWitness sweep_cut(const Graph& g, const SpectralOptions& opts = {});

/// Repeatedly divides the undivided piece with the smallest key (ties: the
/// earliest created) along its best cut until k pieces remain.
PartitionResult theorem2_partition(const Graph& g, int k, const CutOracleMode& mode = {});

struct ClaimEntry {
  int node = -1; // index of H^{(s)}
  int p = 0;
  int q = 0;
  int s = 0;
  std::size_t lhs = 0; // |d_(p,s) - d_(q,s)|
  Ratio rhs;           // 2|d_(q,s)| + 2 h(H^(p)) |V_{H^(s)}|
  bool ok = false;
};

/// Evaluates |d_(p,s) - d_(q,s)| <= 2|d_(q,s)| + 2 h(H^(p)) |V_{H^(s)}| for
/// every chain root = H^(0) > ... > H^(s) and every p with q = p + 1 < s,
/// where d_(a,b) is the boundary of H^(b) inside H^(a).
std::vector<ClaimEntry> claim_check(const Graph& g, const PartitionTrace& trace);

struct Theorem2Conclusion {
  int k = 0;
  Ratio h_k;
  Ratio h_k1;
  bool hypothesis = false;           // h_{k+1} / 3^{k+1} > h_k
  std::vector<Ratio> block_h;        // exact h(G^i)
  std::vector<Ratio> block_ratios;   // |dV^i| / |V^i| in G
  Ratio min_block_h;
  Ratio max_block_ratio;
  Ratio lower_target;                // h_{k+1} / 3^{k+1}
  Ratio upper_target;                // 3^k h_k
  bool lower_ok = false;
  bool upper_ok = false;
};

/// Exact evaluation of both conclusion inequalities for a computed
/// partition; requires h_k and h_{k+1} within the partition caps.
Theorem2Conclusion evaluate_theorem2(const Graph& g, const PartitionResult& result,
                                     const ExactCaps& caps = {});
/// Same, with h_k and h_{k+1} supplied by the caller.
Theorem2Conclusion evaluate_theorem2(const Graph& g, const PartitionResult& result, Ratio h_k,
                                     Ratio h_k1, const ExactCaps& caps = {});

} // namespace mwc
