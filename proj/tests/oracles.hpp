#pragma once

// Slow, independent reference computations used only by the tests. None of
// these call into the exact enumeration or eigensolver code under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "mwc/graph.hpp"

namespace oracle {

// Plain fraction with cross-multiplication compare; den == 0 is +infinity.
struct Frac {
  long long num = 1;
  long long den = 0;
};

inline bool less(Frac a, Frac b) {
  if (a.den == 0) return false;
  if (b.den == 0) return true;
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

inline bool equal(Frac a, Frac b) { return !less(a, b) && !less(b, a); }

using EdgeList = std::vector<std::pair<int, int>>;

inline EdgeList edges_of(const mwc::Graph& g) {
  EdgeList out;
  for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

inline long long cut_size(const EdgeList& edges, const std::vector<int>& label, int which) {
  long long c = 0;
  for (auto [u, v] : edges) c += (label[u] == which) != (label[v] == which);
  return c;
}

// min |dF|/|F| over 1 <= |F| <= n/2 restricted to `within` (bitmask).
inline Frac brute_h(int n, const EdgeList& all_edges, std::uint64_t within) {
  EdgeList edges;
  for (auto [u, v] : all_edges) {
    if ((within >> u & 1) && (within >> v & 1)) edges.emplace_back(u, v);
  }
  std::vector<int> members;
  for (int v = 0; v < n; ++v) {
    if (within >> v & 1) members.push_back(v);
  }
  const int m = static_cast<int>(members.size());
  Frac best;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << m); ++s) {
    const int size = __builtin_popcountll(s);
    if (2 * size > m) continue;
    std::vector<int> label(n, 0);
    for (int i = 0; i < m; ++i) label[members[i]] = (s >> i & 1) ? 1 : 0;
    Frac f{cut_size(edges, label, 1), size};
    if (less(f, best)) best = f;
  }
  return best;
}

inline Frac brute_h(const mwc::Graph& g) {
  const std::uint64_t all = g.n() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.n()) - 1;
  return brute_h(g.n(), edges_of(g), all);
}

// min over surjective labelings in k^n of the max block ratio.
inline Frac brute_hk(const mwc::Graph& g, int k) {
  const int n = g.n();
  const EdgeList edges = edges_of(g);
  std::vector<int> label(n, 0);
  Frac best;
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= k;
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    std::vector<int> sizes(k, 0);
    for (int i = 0; i < n; ++i) {
      label[i] = static_cast<int>(c % k);
      c /= k;
      ++sizes[label[i]];
    }
    if (std::find(sizes.begin(), sizes.end(), 0) != sizes.end()) continue;
    Frac worst{0, 1};
    for (int b = 0; b < k; ++b) {
      Frac f{cut_size(edges, label, b), sizes[b]};
      if (less(worst, f)) worst = f;
    }
    if (less(worst, best)) best = worst;
  }
  return best;
}

// Cyclic Jacobi rotations on a dense symmetric matrix; returns ascending
// eigenvalues.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const int n = static_cast<int>(a.size());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    }
    if (off < 1e-26) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int r = 0; r < n; ++r) {
          const double arp = a[r][p], arq = a[r][q];
          a[r][p] = c * arp - s * arq;
          a[r][q] = s * arp + c * arq;
        }
        for (int r = 0; r < n; ++r) {
          const double apr = a[p][r], aqr = a[q][r];
          a[p][r] = c * apr - s * aqr;
          a[q][r] = s * apr + c * aqr;
        }
      }
    }
  }
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a[i][i];
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<double> laplacian_eigenvalues(const mwc::Graph& g) {
  const int n = g.n();
  std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
  for (const auto& e : g.edges()) {
    l[e.u][e.v] -= 1.0;
    l[e.v][e.u] -= 1.0;
    l[e.u][e.u] += 1.0;
    l[e.v][e.v] += 1.0;
  }
  return jacobi_eigenvalues(l);
}

// Erdos-Renyi style graph for property tests.
inline mwc::Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<mwc::Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back({u, v});
    }
  }
  return mwc::Graph(n, edges);
}

inline std::vector<int> random_surjective_labels(std::mt19937_64& rng, int n, int k) {
  std::uniform_int_distribution<int> pick(0, k - 1);
  for (;;) {
    std::vector<int> labels(n);
    std::vector<int> seen(k, 0);
    for (auto& l : labels) {
      l = pick(rng);
      seen[l] = 1;
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) continue;
    std::vector<int> rename(k, -1);
    int next = 0;
    for (auto& l : labels) {
      if (rename[l] < 0) rename[l] = next++;
      l = rename[l];
    }
    return labels;
  }
}

} // namespace oracle
