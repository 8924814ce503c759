#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mwc/graph.hpp"

namespace mwc {

/// Real function on the vertex set.
using TestFunction = Eigen::VectorXd;

struct SpectralOptions {
  int dense_cap = 2000;
  /// Residual tolerance relative to the matrix norm.
  double tol = 1e-9;
};

/// Laplacian eigenvalues, ascending, with the orthonormal eigenvectors as
/// columns. Values in [-tol, 0] are clamped to 0.
struct Spectrum {
  std::vector<double> eigenvalues;
  Eigen::MatrixXd eigenvectors;
  double residual = 0.0;

  int size() const { return static_cast<int>(eigenvalues.size()); }
  /// 1-based, as lambda_1 <= ... <= lambda_n. Throws invalid_k past n.
  double lambda(int k) const;
};

/// L = D - A as a dense matrix.
Eigen::MatrixXd laplacian(const Graph& g);

Spectrum spectrum(const Graph& g, const SpectralOptions& opts = {});

/// ||df||^2 / ||f||^2 with ||df||^2 summed over edges.
double rayleigh_quotient(const Graph& g, const TestFunction& f);

/// sum over edges of (f(x) - f(y))^2
double dirichlet_energy(const Graph& g, const TestFunction& f);

/// Unit eigenvector for lambda_2, orthogonal to the constants; the first
/// entry with magnitude above 1e-9 is made positive.
TestFunction fiedler_vector(const Graph& g, const SpectralOptions& opts = {});
TestFunction fiedler_vector(const Spectrum& s);

/// lambda_2 of G[S]; a single vertex contributes 0 (no second eigenvalue).
double block_lambda2(const Graph& g, const VertexSet& s, const SpectralOptions& opts = {});

/// Integer test functions psi_0 = 1 and, for i = 1..k-1, |V^{i+1}| on the
/// first i blocks, -(|V^1| + ... + |V^i|) on block i+1, 0 elsewhere. Together
/// they span a k-dimensional space whose orthogonal complement certifies
/// lambda_{k+1}(G) >= min_i lambda_2(G^i).
struct Lemma2Certificate {
  std::vector<std::vector<std::int64_t>> psi;
  /// All pairwise integer inner products are zero.
  bool orthogonal = false;
  std::vector<double> block_lambda2;
  double lower_bound = 0.0;
};

Lemma2Certificate lemma2_certificate(const Graph& g, const KPartition& p,
                                     const SpectralOptions& opts = {});

/// Upper bound on lambda_{m_count} from the block indicator functions
/// f_m = 1/sqrt|B| on block 2m (1-based), m = 1..m_count, of a chained graph.
/// The selected blocks must be disjoint and pairwise non-adjacent, so the
/// f_m are orthonormal and the energy of any combination splits.
struct RemarkBound {
  std::vector<int> block_indices;   // 0-based indices into `blocks`
  std::vector<double> energies;     // ||df_m||^2
  std::vector<double> caps;         // 2 / |V_{H_2m}|
  bool orthonormal = false;
  bool within_caps = false;
  double bound = 0.0;               // max_m ||df_m||^2
};

RemarkBound remark_upper_bound(const Graph& g, const std::vector<VertexSet>& blocks, int m_count);

} // namespace mwc
