#include "mwc/partitioner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mwc/error.hpp"

namespace mwc {

std::string_view to_string(CutMode mode) { return mode == CutMode::exact ? "exact" : "sweep"; }

CutMode parse_cut_mode(std::string_view text) {
  if (text == "exact") return CutMode::exact;
  if (text == "sweep") return CutMode::sweep;
  throw Error(ErrorKind::parse_error, "unknown cut mode '" + std::string(text) + "'");
}

CutWitness sweep_cut(const Graph& g, const SpectralOptions& opts) {
  const int n = g.n();
  if (n < 2) throw Error(ErrorKind::unsplittable, "sweep cut needs at least 2 vertices");

  const auto comps = connected_components(g);
  if (comps.size() > 1) {
    const auto smallest = std::min_element(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
      return a.size() < b.size();
    });
    return CutWitness{*smallest, 0, Ratio(0)};
  }

  const Spectrum spec = spectrum(g, opts);
  const TestFunction f = fiedler_vector(spec);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return f[a] < f[b]; });

  std::vector<char> in_prefix(n, 0);
  std::int64_t boundary = 0;
  std::uint64_t best_b = 0, best_den = 0;
  int best_i = -1;
  for (int i = 1; i < n; ++i) {
    const Vertex v = order[i - 1];
    int inside = 0;
    for (Vertex w : g.neighbors(v)) inside += in_prefix[w];
    boundary += g.degree(v) - 2 * inside;
    in_prefix[v] = 1;
    const auto den = static_cast<std::uint64_t>(std::min(i, n - i));
    const auto b = static_cast<std::uint64_t>(boundary);
    if (best_i < 0 || b * best_den < best_b * den) {
      best_b = b;
      best_den = den;
      best_i = i;
    }
  }

  CutWitness out;
  out.set = VertexSet(n);
  if (best_i <= n - best_i) {
    for (int j = 0; j < best_i; ++j) out.set.insert(order[j]);
  } else {
    for (int j = best_i; j < n; ++j) out.set.insert(order[j]);
  }
  out.boundary = best_b;
  out.ratio = Ratio(best_b, best_den);

  const double lambda2 = spec.lambda(2);
  const double limit = std::sqrt(2.0 * max_degree(g) * lambda2) + 1e-7;
  if (out.ratio.to_double() > limit) {
    throw Error(ErrorKind::solver_failure, "sweep ratio " + out.ratio.to_string() +
                                               " exceeds sqrt(2 deg lambda_2) = " + std::to_string(limit));
  }
  return out;
}

CutWitness best_cut(const Graph& g, const VertexSet& h, const CutOracleMode& mode) {
  if (h.host_size() != g.n()) throw Error(ErrorKind::invalid_set, "piece host size mismatch");
  if (h.size() < 2) throw Error(ErrorKind::unsplittable, "piece with fewer than 2 vertices cannot be split");

  if (mode.mode == CutMode::exact) {
    if (g.n() > 62) throw CapExceeded("subset", mode.caps.subset_n, g.n());
    const auto adj = g.adjacency_masks();
    const MaskCut cut = min_cut_in_mask(adj, h.mask(), mode.caps);
    return CutWitness{VertexSet::from_mask(g.n(), cut.set), cut.boundary, cut.ratio};
  }

  const InducedSubgraph sub = induced_subgraph(g, h);
  const CutWitness local = sweep_cut(sub.graph, mode.spectral);
  CutWitness out;
  out.set = VertexSet(g.n());
  for (Vertex v : local.set.members()) out.set.insert(sub.to_host[v]);
  out.boundary = local.boundary;
  out.ratio = local.ratio;
  return out;
}

namespace {

TraceNode make_node(const Graph& g, std::string address, VertexSet vertices, int parent,
                    const CutOracleMode& mode) {
  TraceNode node;
  node.address = std::move(address);
  node.parent = parent;
  if (vertices.size() >= 2) {
    node.cut = best_cut(g, vertices, mode);
  } else {
    node.cut.set = VertexSet(g.n());
  }
  node.vertices = std::move(vertices);
  return node;
}

} // namespace

PartitionResult theorem2_partition(const Graph& g, int k, const CutOracleMode& mode) {
  const int n = g.n();
  if (k < 1 || k > n) {
    throw Error(ErrorKind::invalid_k, "k = " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  PartitionTrace trace;
  trace.mode = mode.mode;
  if (k == 1) {
    TraceNode root;
    root.vertices = VertexSet::full(n);
    trace.nodes.push_back(std::move(root));
  } else {
    trace.nodes.push_back(make_node(g, "", VertexSet::full(n), -1, mode));
  }

  for (int step = 0; step + 1 < k; ++step) {
    int chosen = -1;
    for (int i = 0; i < static_cast<int>(trace.nodes.size()); ++i) {
      const auto& node = trace.nodes[i];
      if (node.divided()) continue;
      // Strict comparison keeps the earliest created piece on ties.
      if (chosen < 0 || node.key() < trace.nodes[chosen].key()) chosen = i;
    }
    if (trace.nodes[chosen].vertices.size() < 2) {
      throw Error(ErrorKind::unsplittable, "selected piece '" + trace.nodes[chosen].address +
                                               "' is a single vertex but more pieces are needed");
    }
    const VertexSet inside = trace.nodes[chosen].cut.set;
    VertexSet outside = trace.nodes[chosen].vertices;
    for (Vertex v : inside.members()) outside.erase(v);
    const std::string base = trace.nodes[chosen].address;

    trace.nodes[chosen].division = step;
    trace.divisions.push_back(chosen);
    const int first = static_cast<int>(trace.nodes.size());
    trace.nodes.push_back(make_node(g, base + "0", inside, chosen, mode));
    trace.nodes.push_back(make_node(g, base + "1", std::move(outside), chosen, mode));
    trace.nodes[chosen].children = {first, first + 1};
  }

  for (int i = 0; i < static_cast<int>(trace.nodes.size()); ++i) {
    if (!trace.nodes[i].divided()) trace.leaves.push_back(i);
  }
  std::sort(trace.leaves.begin(), trace.leaves.end(), [&](int a, int b) {
    return trace.nodes[a].vertices.least() < trace.nodes[b].vertices.least();
  });
  std::vector<VertexSet> blocks;
  for (int leaf : trace.leaves) blocks.push_back(trace.nodes[leaf].vertices);
  return PartitionResult{KPartition(n, std::move(blocks)), std::move(trace)};
}

namespace {

// Edges of G[outer] joining inner to outer - inner, as edge indices.
std::vector<std::size_t> relative_boundary_edges(const Graph& g, const VertexSet& inner,
                                                 const VertexSet& outer) {
  std::vector<std::size_t> out;
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (!outer.contains(e.u) || !outer.contains(e.v)) continue;
    if (inner.contains(e.u) != inner.contains(e.v)) out.push_back(i);
  }
  return out;
}

} // namespace

std::vector<ClaimEntry> claim_check(const Graph& g, const PartitionTrace& trace) {
  if (trace.mode != CutMode::exact) {
    throw Error(ErrorKind::malformed_trace, "claim check requires an exact-mode trace");
  }
  if (trace.nodes.empty() || !trace.nodes[0].address.empty()) {
    throw Error(ErrorKind::malformed_trace, "trace has no root");
  }
  for (std::size_t i = 1; i < trace.nodes.size(); ++i) {
    const auto& node = trace.nodes[i];
    if (node.parent < 0 || node.parent >= static_cast<int>(i)) {
      throw Error(ErrorKind::malformed_trace, "node '" + node.address + "' has an invalid parent");
    }
    const auto& parent = trace.nodes[node.parent];
    if (!parent.divided() || !node.vertices.is_subset_of(parent.vertices) ||
        node.address.size() != parent.address.size() + 1 ||
        node.address.compare(0, parent.address.size(), parent.address) != 0) {
      throw Error(ErrorKind::malformed_trace, "node '" + node.address + "' is not nested in its parent");
    }
  }

  std::vector<ClaimEntry> out;
  for (int idx = 0; idx < static_cast<int>(trace.nodes.size()); ++idx) {
    std::vector<int> chain;
    for (int cur = idx; cur >= 0; cur = trace.nodes[cur].parent) chain.push_back(cur);
    std::reverse(chain.begin(), chain.end());
    const int s = static_cast<int>(chain.size()) - 1;
    if (s < 2) continue;
    const auto& hs = trace.nodes[chain[s]].vertices;
    const auto vs = static_cast<std::uint64_t>(hs.size());
    for (int p = 0; p + 1 < s; ++p) {
      const int q = p + 1;
      const auto& hp = trace.nodes[chain[p]];
      const auto& hq = trace.nodes[chain[q]];
      const auto dps = relative_boundary_edges(g, hs, hp.vertices);
      const auto dqs = relative_boundary_edges(g, hs, hq.vertices);
      std::vector<std::size_t> diff;
      std::set_difference(dps.begin(), dps.end(), dqs.begin(), dqs.end(), std::back_inserter(diff));
      ClaimEntry entry;
      entry.node = idx;
      entry.p = p;
      entry.q = q;
      entry.s = s;
      entry.lhs = diff.size();
      entry.rhs = Ratio(2 * dqs.size()) + hp.key() * (2 * vs);
      entry.ok = Ratio(entry.lhs) <= entry.rhs;
      out.push_back(entry);
    }
  }
  return out;
}

Theorem2Conclusion evaluate_theorem2(const Graph& g, const PartitionResult& result, const ExactCaps& caps) {
  const int k = result.partition.k();
  return evaluate_theorem2(g, result, kway_expansion_exact(g, k, caps).value,
                           kway_expansion_exact(g, k + 1, caps).value, caps);
}

Theorem2Conclusion evaluate_theorem2(const Graph& g, const PartitionResult& result, Ratio h_k, Ratio h_k1,
                                     const ExactCaps& caps) {
  Theorem2Conclusion c;
  c.k = result.partition.k();
  const int k = c.k;
  c.h_k = h_k;
  c.h_k1 = h_k1;
  c.lower_target = c.h_k1 / checked_pow(3, k + 1);
  c.upper_target = c.h_k * checked_pow(3, k);
  c.hypothesis = c.lower_target > c.h_k;

  const auto adj = g.adjacency_masks();
  c.min_block_h = Ratio::infinity();
  for (const auto& block : result.partition.blocks()) {
    c.block_h.push_back(min_cut_in_mask(adj, block.mask(), caps).ratio);
    c.min_block_h = std::min(c.min_block_h, c.block_h.back());
  }
  const RatioProfile profile = boundary_ratio_profile(g, result.partition);
  c.block_ratios = profile.block_ratios;
  c.max_block_ratio = profile.max;
  c.lower_ok = c.lower_target <= c.min_block_h;
  c.upper_ok = c.max_block_ratio <= c.upper_target;
  return c;
}

} // namespace mwc
