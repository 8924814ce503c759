#include "mwc/graph.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>

#include "mwc/error.hpp"

namespace mwc {

namespace {

std::size_t word_count(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

void check_vertex(int n, Vertex v, const char* what) {
  if (v < 0 || v >= n) {
    throw Error(ErrorKind::invalid_set, std::string(what) + ": vertex " + std::to_string(v) +
                                            " out of range 0.." + std::to_string(n - 1));
  }
}

void check_host(const Graph& g, const VertexSet& s) {
  if (s.host_size() != g.n()) {
    throw Error(ErrorKind::invalid_set, "vertex set host size " + std::to_string(s.host_size()) +
                                            " does not match graph size " + std::to_string(g.n()));
  }
}

} // namespace

// ---------------------------------------------------------------- VertexSet

VertexSet::VertexSet(int host_size) : n_(host_size), words_(word_count(host_size), 0) {
  if (host_size < 0) throw Error(ErrorKind::invalid_set, "negative host size");
}

VertexSet VertexSet::from_members(int host_size, std::span<const Vertex> members) {
  VertexSet s(host_size);
  for (Vertex v : members) s.insert(v);
  return s;
}

VertexSet VertexSet::from_mask(int host_size, std::uint64_t mask) {
  if (host_size > 64) throw Error(ErrorKind::invalid_set, "bitmask form requires n <= 64");
  if (host_size < 64 && (mask >> host_size) != 0) {
    throw Error(ErrorKind::invalid_set, "mask has members beyond host size");
  }
  VertexSet s(host_size);
  if (!s.words_.empty()) s.words_[0] = mask;
  return s;
}

VertexSet VertexSet::full(int host_size) {
  VertexSet s(host_size);
  for (Vertex v = 0; v < host_size; ++v) s.insert(v);
  return s;
}

int VertexSet::size() const noexcept {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool VertexSet::contains(Vertex v) const noexcept {
  if (v < 0 || v >= n_) return false;
  return (words_[v / 64] >> (v % 64)) & 1U;
}

Vertex VertexSet::least() const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i]) return static_cast<Vertex>(i * 64 + std::countr_zero(words_[i]));
  }
  return -1;
}

void VertexSet::insert(Vertex v) {
  check_vertex(n_, v, "vertex set");
  words_[v / 64] |= std::uint64_t{1} << (v % 64);
}

void VertexSet::erase(Vertex v) {
  check_vertex(n_, v, "vertex set");
  words_[v / 64] &= ~(std::uint64_t{1} << (v % 64));
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  out.reserve(size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    for (auto w = words_[i]; w; w &= w - 1) {
      out.push_back(static_cast<Vertex>(i * 64 + std::countr_zero(w)));
    }
  }
  return out;
}

std::uint64_t VertexSet::mask() const {
  if (n_ > 64) throw Error(ErrorKind::invalid_set, "bitmask form requires n <= 64");
  return words_.empty() ? 0 : words_[0];
}

VertexSet VertexSet::complement() const {
  VertexSet out(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
  if (n_ % 64 != 0 && !out.words_.empty()) {
    out.words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }
  return out;
}

bool VertexSet::is_subset_of(const VertexSet& other) const noexcept {
  if (other.n_ != n_) return false;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

bool VertexSet::intersects(const VertexSet& other) const noexcept {
  const auto m = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < m; ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

// -------------------------------------------------------------------- Graph

Graph::Graph(int n) : adj_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 0) throw Error(ErrorKind::invalid_set, "negative vertex count");
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  edges_.reserve(edges.size());
  for (auto e : edges) {
    check_vertex(n, e.u, "edge");
    check_vertex(n, e.v, "edge");
    if (e.u == e.v) {
      throw Error(ErrorKind::invalid_set, "loop at vertex " + std::to_string(e.u));
    }
    edges_.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw Error(ErrorKind::invalid_set, "duplicate edge " + std::to_string(dup->u) + " " +
                                            std::to_string(dup->v));
  }
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& list = adj_.at(u);
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::uint64_t> Graph::adjacency_masks() const {
  if (n() > 64) throw Error(ErrorKind::invalid_set, "adjacency masks require n <= 64");
  std::vector<std::uint64_t> out(adj_.size(), 0);
  for (std::size_t v = 0; v < adj_.size(); ++v) {
    for (Vertex w : adj_[v]) out[v] |= std::uint64_t{1} << w;
  }
  return out;
}

// --------------------------------------------------------------- KPartition

KPartition::KPartition(int host_size, std::vector<VertexSet> blocks)
    : n_(host_size), blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw Error(ErrorKind::invalid_partition, "partition has no blocks");
  VertexSet seen(n_);
  int covered = 0;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto& b = blocks_[i];
    if (b.host_size() != n_) {
      throw Error(ErrorKind::invalid_partition, "block host size mismatch");
    }
    if (b.empty()) {
      throw Error(ErrorKind::invalid_partition, "block " + std::to_string(i) + " is empty");
    }
    if (b.intersects(seen)) {
      throw Error(ErrorKind::invalid_partition, "block " + std::to_string(i) + " overlaps an earlier block");
    }
    for (Vertex v : b.members()) seen.insert(v);
    covered += b.size();
  }
  if (covered != n_) {
    throw Error(ErrorKind::invalid_partition, "blocks cover " + std::to_string(covered) + " of " +
                                                  std::to_string(n_) + " vertices");
  }
}

KPartition KPartition::from_labels(std::span<const int> labels) {
  const int n = static_cast<int>(labels.size());
  int k = 0;
  for (int l : labels) {
    if (l < 0) throw Error(ErrorKind::invalid_partition, "negative block label");
    k = std::max(k, l + 1);
  }
  std::vector<VertexSet> blocks(k, VertexSet(n));
  for (int v = 0; v < n; ++v) blocks[labels[v]].insert(v);
  return KPartition(n, std::move(blocks));
}

// --------------------------------------------------------------- operations

BoundaryResult boundary_edges(const Graph& g, const VertexSet& f) {
  check_host(g, f);
  BoundaryResult out;
  for (const auto& e : g.edges()) {
    if (f.contains(e.u) != f.contains(e.v)) out.edges.push_back(e);
  }
  out.count = out.edges.size();
  return out;
}

std::size_t boundary_count(const Graph& g, const VertexSet& f) {
  check_host(g, f);
  std::size_t c = 0;
  for (const auto& e : g.edges()) c += f.contains(e.u) != f.contains(e.v);
  return c;
}

std::size_t relative_boundary(const Graph& g, const VertexSet& inner, const VertexSet& outer) {
  check_host(g, inner);
  check_host(g, outer);
  if (!inner.is_subset_of(outer)) {
    throw Error(ErrorKind::invalid_nesting, "inner set is not contained in outer set");
  }
  std::size_t c = 0;
  for (const auto& e : g.edges()) {
    if (!outer.contains(e.u) || !outer.contains(e.v)) continue;
    c += inner.contains(e.u) != inner.contains(e.v);
  }
  return c;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
  check_host(g, s);
  if (s.empty()) throw Error(ErrorKind::invalid_set, "induced subgraph of an empty set");
  InducedSubgraph out;
  out.to_host = s.members();
  std::vector<int> local(g.n(), -1);
  for (std::size_t i = 0; i < out.to_host.size(); ++i) local[out.to_host[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (local[e.u] >= 0 && local[e.v] >= 0) edges.push_back({local[e.u], local[e.v]});
  }
  out.graph = Graph(static_cast<int>(out.to_host.size()), edges);
  return out;
}

InducedSubgraph complement_subgraph(const Graph& g, const VertexSet& s) {
  check_host(g, s);
  if (s.size() == g.n()) {
    throw Error(ErrorKind::empty_complement, "complement of the full vertex set is empty");
  }
  return induced_subgraph(g, s.complement());
}

std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<int> label(g.n(), -1);
  std::vector<VertexSet> out;
  for (Vertex root = 0; root < g.n(); ++root) {
    if (label[root] >= 0) continue;
    const int id = static_cast<int>(out.size());
    VertexSet comp(g.n());
    std::vector<Vertex> stack{root};
    label[root] = id;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.insert(v);
      for (Vertex w : g.neighbors(v)) {
        if (label[w] < 0) {
          label[w] = id;
          stack.push_back(w);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

std::vector<int> bfs_distances(const Graph& g, Vertex src) {
  check_vertex(g.n(), src, "bfs source");
  std::vector<int> dist(g.n(), kUnreachable);
  std::queue<Vertex> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

int max_degree(const Graph& g) {
  int d = 0;
  for (Vertex v = 0; v < g.n(); ++v) d = std::max(d, g.degree(v));
  return d;
}

// ---------------------------------------------------------------------- I/O

Graph read_edge_list(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  auto fail = [&](const std::string& msg) {
    return Error(ErrorKind::parse_error, "edge list line " + std::to_string(line_no) + ": " + msg);
  };
  if (!next_line()) throw fail("missing header 'n m'");
  long long n = -1, m = -1;
  {
    std::istringstream hdr(line);
    std::string extra;
    if (!(hdr >> n >> m) || (hdr >> extra) || n < 0 || m < 0) throw fail("malformed header");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) throw fail("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    std::istringstream row(line);
    long long u, v;
    std::string extra;
    if (!(row >> u >> v) || (row >> extra)) throw fail("malformed edge");
    if (u == v) throw fail("loop edge");
    if (!(0 <= u && u < v && v < n)) throw fail("edge must satisfy 0 <= u < v < n");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (next_line()) throw fail("trailing content after " + std::to_string(m) + " edges");
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorKind::parse_error, "edge list contains a duplicate edge");
  }
  return Graph(static_cast<int>(n), edges);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

} // namespace mwc
