#include "mwc/expansion.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <string>

#include "mwc/error.hpp"
#include "mwc/parallel.hpp"

namespace mwc {

namespace {

// Highest vertex count any bitmask routine accepts, whatever the caps say.
constexpr int kMaskLimit = 62;

bool lex_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t d = a ^ b;
  return d != 0 && (a & (d & (~d + 1))) != 0;
}

struct Candidate {
  std::uint64_t set = 0;
  std::uint64_t boundary = 0;
  std::uint64_t size = 0;
};

// Strict preference: smaller ratio, then smaller set, then lexicographic.
bool better(const Candidate& a, const Candidate& b) {
  if (b.size == 0) return a.size != 0;
  if (a.size == 0) return false;
  const auto lhs = a.boundary * b.size;
  const auto rhs = b.boundary * a.size;
  if (lhs != rhs) return lhs < rhs;
  if (a.size != b.size) return a.size < b.size;
  return lex_less(a.set, b.set);
}

struct LocalGraph {
  int m = 0;
  std::vector<std::uint64_t> adj;
  std::vector<int> deg;
  std::vector<int> to_host;
};

LocalGraph compress(std::span<const std::uint64_t> adj, std::uint64_t s) {
  LocalGraph lg;
  lg.m = std::popcount(s);
  std::vector<int> local(adj.size(), -1);
  for (auto w = s; w; w &= w - 1) {
    const int v = std::countr_zero(w);
    local[v] = static_cast<int>(lg.to_host.size());
    lg.to_host.push_back(v);
  }
  lg.adj.assign(lg.m, 0);
  lg.deg.assign(lg.m, 0);
  for (int i = 0; i < lg.m; ++i) {
    for (auto w = adj[lg.to_host[i]] & s; w; w &= w - 1) {
      lg.adj[i] |= std::uint64_t{1} << local[std::countr_zero(w)];
    }
    lg.deg[i] = std::popcount(lg.adj[i]);
  }
  return lg;
}

// Scans Gray-code indices [begin, end) of the local subset lattice.
Candidate scan_range(const LocalGraph& lg, std::uint64_t begin, std::uint64_t end) {
  const auto m = static_cast<std::uint64_t>(lg.m);
#ifdef MWC_MUTATION_DROP_HALF_BOUND
  const std::uint64_t max_size = m;
  const bool halve_ties = false;
#else
  const std::uint64_t max_size = m / 2;
  const bool halve_ties = (m % 2 == 0);
#endif
  Candidate best;
  std::uint64_t x = begin ^ (begin >> 1);
  std::int64_t boundary = 0;
  for (auto w = x; w; w &= w - 1) {
    const int i = std::countr_zero(w);
    boundary += std::popcount(lg.adj[i] & ~x);
  }
  std::uint64_t size = std::popcount(x);
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    if (idx != begin) {
      const int i = std::countr_zero(idx);
      const std::uint64_t bit = std::uint64_t{1} << i;
      const int delta = lg.deg[i] - 2 * std::popcount(lg.adj[i] & x);
      if (x & bit) {
        boundary -= delta;
        --size;
      } else {
        boundary += delta;
        ++size;
      }
      x ^= bit;
    }
    if (size == 0 || size > max_size) continue;
    if (halve_ties && size * 2 == m && !(x & 1)) continue;
    Candidate c{x, static_cast<std::uint64_t>(boundary), size};
    if (better(c, best)) best = c;
  }
  return best;
}

} // namespace

std::uint32_t mask_boundary(std::span<const std::uint64_t> adj, std::uint64_t f,
                            std::uint64_t within) {
  std::uint32_t b = 0;
  for (auto w = f; w; w &= w - 1) {
    b += std::popcount(adj[std::countr_zero(w)] & within & ~f);
  }
  return b;
}

MaskCut min_cut_in_mask(std::span<const std::uint64_t> adj, std::uint64_t s, const ExactCaps& caps) {
  const int m = std::popcount(s);
  if (m < 2) return {};
  const int limit = std::min(caps.subset_n, kMaskLimit);
  if (m > limit) throw CapExceeded("subset", limit, m);

  const LocalGraph lg = compress(adj, s);
  const std::uint64_t total = std::uint64_t{1} << m;
  constexpr std::uint64_t kChunk = std::uint64_t{1} << 16;
  const std::uint64_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<Candidate> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::uint64_t begin = c * kChunk;
    partial[c] = scan_range(lg, begin, std::min(total, begin + kChunk));
  });
  Candidate best;
  for (const auto& c : partial) {
    if (better(c, best)) best = c;
  }

  MaskCut out;
  for (auto w = best.set; w; w &= w - 1) {
    out.set |= std::uint64_t{1} << lg.to_host[std::countr_zero(w)];
  }
  out.boundary = static_cast<std::uint32_t>(best.boundary);
  out.ratio = Ratio(best.boundary, best.size);
  return out;
}

CutWitness expansion_exact(const Graph& g, const ExactCaps& caps) {
  const int n = g.n();
  CutWitness out;
  out.set = VertexSet(n);
  if (n < 2) return out;
  const int limit = std::min(caps.subset_n, kMaskLimit);
  if (n > limit) throw CapExceeded("subset", limit, n);
  const auto adj = g.adjacency_masks();
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  const MaskCut cut = min_cut_in_mask(adj, all, caps);
  out.set = VertexSet::from_mask(n, cut.set);
  out.boundary = cut.boundary;
  out.ratio = cut.ratio;
  return out;
}

std::uint64_t stirling2(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (n == 0) return k == 0 ? 1 : 0;
  constexpr auto kSat = ~std::uint64_t{0};
  // row[j] = S(i, j)
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, k); j >= 1; --j) {
      const unsigned __int128 v =
          static_cast<unsigned __int128>(j) * row[j] + row[j - 1];
      row[j] = v > kSat ? kSat : static_cast<std::uint64_t>(v);
    }
    row[0] = 0;
  }
  return row[k];
}

void require_partition_budget(int n, int k, const ExactCaps& caps) {
  if (k < 1 || k > n) {
    throw Error(ErrorKind::invalid_k, "k = " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  if (n > kMaskLimit) throw CapExceeded("partition", caps.partition_n, n);
  if (n <= caps.partition_n) return;
  if (stirling2(n, k) <= caps.partition_count) return;
  throw CapExceeded("partition", caps.partition_n, n);
}

namespace {

struct Best {
  std::uint64_t num = 1;
  std::uint64_t den = 0; // den == 0 is "nothing yet" (+infinity)
  std::vector<int> labels;
};

bool less_than(std::uint64_t an, std::uint64_t ad, std::uint64_t bn, std::uint64_t bd) {
  if (bd == 0) return ad != 0;
  if (ad == 0) return false;
  return an * bd < bn * ad;
}

// Depth-first RGS enumeration over vertices [depth, n) with branch-and-bound:
// a block's boundary edges to already placed vertices are final, so
// partial/(size + remaining) bounds its final ratio from below. Subtrees are
// cut only when that bound is strictly worse than the incumbent, which keeps
// the first-enumerated optimum intact.
class KwaySearch {
public:
  KwaySearch(const std::vector<std::uint64_t>& adj, int n, int k)
      : adj_(adj), n_(n), k_(k), labels_(n, -1), size_(k, 0), partial_(k, 0) {}

  void seed(std::span<const int> prefix) {
    for (int i = 0; i < static_cast<int>(prefix.size()); ++i) place(i, prefix[i]);
    depth_ = static_cast<int>(prefix.size());
  }

  /// Prunes against an outside incumbent as well as the local one; only
  /// subtrees strictly worse than it are skipped.
  void set_bound(std::uint64_t num, std::uint64_t den) {
    bound_num_ = num;
    bound_den_ = den;
  }

  void run(Best& best) { recurse(depth_, best); }

private:
  int blocks_used() const {
    int c = 0;
    for (int s : size_) c += s > 0;
    return c;
  }

  void place(int v, int label) {
    for (auto w = adj_[v] & placed_; w; w &= w - 1) {
      const int u = std::countr_zero(w);
      if (labels_[u] != label) {
        ++partial_[label];
        ++partial_[labels_[u]];
      }
    }
    labels_[v] = label;
    ++size_[label];
    placed_ |= std::uint64_t{1} << v;
  }

  void unplace(int v) {
    const int label = labels_[v];
    placed_ &= ~(std::uint64_t{1} << v);
    --size_[label];
    labels_[v] = -1;
    for (auto w = adj_[v] & placed_; w; w &= w - 1) {
      const int u = std::countr_zero(w);
      if (labels_[u] != label) {
        --partial_[label];
        --partial_[labels_[u]];
      }
    }
  }

  bool pruned(int remaining, const Best& best) const {
    std::uint64_t bn = best.num, bd = best.den;
    if (less_than(bound_num_, bound_den_, bn, bd)) {
      bn = bound_num_;
      bd = bound_den_;
    }
    if (bd == 0) return false;
    for (int j = 0; j < k_; ++j) {
      if (size_[j] == 0) continue;
      const std::uint64_t den = static_cast<std::uint64_t>(size_[j] + remaining);
      if (less_than(bn, bd, static_cast<std::uint64_t>(partial_[j]), den)) return true;
    }
    return false;
  }

  void recurse(int v, Best& best) {
    if (v == n_) {
      std::uint64_t num = 0, den = 1;
      for (int j = 0; j < k_; ++j) {
        const auto bn = static_cast<std::uint64_t>(partial_[j]);
        const auto bd = static_cast<std::uint64_t>(size_[j]);
        if (less_than(num, den, bn, bd)) {
          num = bn;
          den = bd;
        }
      }
      if (less_than(num, den, best.num, best.den)) {
        best.num = num;
        best.den = den;
        best.labels = labels_;
      }
      return;
    }
    const int used = blocks_used();
    const int remaining_after = n_ - v - 1;
    const int max_label = std::min(used, k_ - 1);
    for (int label = 0; label <= max_label; ++label) {
      const int used_after = used + (label == used ? 1 : 0);
      if (k_ - used_after > remaining_after) continue;
      place(v, label);
      if (!pruned(remaining_after, best)) recurse(v + 1, best);
      unplace(v);
    }
  }

  const std::vector<std::uint64_t>& adj_;
  int n_;
  int k_;
  int depth_ = 0;
  std::uint64_t bound_num_ = 1;
  std::uint64_t bound_den_ = 0;
  std::uint64_t placed_ = 0;
  std::vector<int> labels_;
  std::vector<int> size_;
  std::vector<int> partial_;
};

void collect_prefixes(int n, int k, int depth, std::vector<int>& cur, int used,
                      std::vector<std::vector<int>>& out) {
  const int v = static_cast<int>(cur.size());
  if (v == depth) {
    out.push_back(cur);
    return;
  }
  const int remaining_after = n - v - 1;
  for (int label = 0; label <= std::min(used, k - 1); ++label) {
    const int used_after = used + (label == used ? 1 : 0);
    if (k - used_after > remaining_after) continue;
    cur.push_back(label);
    collect_prefixes(n, k, depth, cur, used_after, out);
    cur.pop_back();
  }
}

} // namespace

KwayWitness kway_expansion_exact(const Graph& g, int k, const ExactCaps& caps) {
  const int n = g.n();
  require_partition_budget(n, k, caps);
  const auto adj = g.adjacency_masks();

  std::vector<std::vector<int>> prefixes;
  std::vector<int> cur;
  const int depth = stirling2(n, k) > 100000 ? std::min(n, 8) : 0;
  collect_prefixes(n, k, depth, cur, 0, prefixes);

  std::vector<Best> partial(prefixes.size());
  std::mutex mu;
  Best shared; // value-only incumbent used to seed pruning across tasks
  parallel_for(prefixes.size(), [&](std::size_t t) {
    Best local;
    KwaySearch search(adj, n, k);
    {
      std::lock_guard lock(mu);
      search.set_bound(shared.num, shared.den);
    }
    search.seed(prefixes[t]);
    search.run(local);
    if (!local.labels.empty()) {
      std::lock_guard lock(mu);
      if (less_than(local.num, local.den, shared.num, shared.den)) {
        shared.num = local.num;
        shared.den = local.den;
      }
    }
    partial[t] = std::move(local);
  });

  // Tasks are in RGS order, so the first task holding the optimum has the
  // first-enumerated optimal partition.
  const Best* best = nullptr;
  for (const auto& p : partial) {
    if (p.labels.empty()) continue;
    if (!best || less_than(p.num, p.den, best->num, best->den)) best = &p;
  }
  if (!best) throw Error(ErrorKind::invalid_k, "no partition found");

  KPartition partition = KPartition::from_labels(best->labels);
  RatioProfile profile = boundary_ratio_profile(g, partition);
  return KwayWitness{std::move(partition), std::move(profile.block_ratios), profile.max};
}

RatioProfile boundary_ratio_profile(const Graph& g, const KPartition& p) {
  if (p.host_size() != g.n()) {
    throw Error(ErrorKind::invalid_partition, "partition host size does not match graph");
  }
  RatioProfile out;
  out.max = Ratio(0);
  for (const auto& block : p.blocks()) {
    Ratio r(boundary_count(g, block), static_cast<std::uint64_t>(block.size()));
    out.max = std::max(out.max, r);
    out.block_ratios.push_back(r);
  }
  return out;
}

} // namespace mwc
