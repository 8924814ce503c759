#include "mwc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mwc/error.hpp"

namespace mwc {

double Spectrum::lambda(int k) const {
  if (k < 1 || k > size()) {
    throw Error(ErrorKind::invalid_k, "lambda_" + std::to_string(k) + " requested for a graph with " +
                                          std::to_string(size()) + " vertices");
  }
  return eigenvalues[k - 1];
}

Eigen::MatrixXd laplacian(const Graph& g) {
  const int n = g.n();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    l(e.u, e.v) = -1.0;
    l(e.v, e.u) = -1.0;
    l(e.u, e.u) += 1.0;
    l(e.v, e.v) += 1.0;
  }
  return l;
}

Spectrum spectrum(const Graph& g, const SpectralOptions& opts) {
  const int n = g.n();
  if (n < 1) throw Error(ErrorKind::invalid_parameter, "spectrum of an empty graph");
  if (n > opts.dense_cap) throw CapExceeded("dense", opts.dense_cap, n);

  const Eigen::MatrixXd l = laplacian(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::solver_failure, "dense eigensolver did not converge");
  }

  Spectrum s;
  s.eigenvectors = solver.eigenvectors();
  const Eigen::VectorXd& values = solver.eigenvalues();
  const double scale = std::max(1.0, l.norm());
  s.residual = ((l * s.eigenvectors) - s.eigenvectors * values.asDiagonal()).colwise().norm().maxCoeff();
  if (!(s.residual <= opts.tol * scale)) {
    throw Error(ErrorKind::solver_failure,
                "eigensolver residual " + std::to_string(s.residual) + " above tolerance");
  }
  s.eigenvalues.resize(n);
  for (int i = 0; i < n; ++i) {
    double v = values[i];
    if (v < 0.0 && v >= -opts.tol * scale) v = 0.0;
    s.eigenvalues[i] = v;
  }
  return s;
}

double dirichlet_energy(const Graph& g, const TestFunction& f) {
  if (f.size() != g.n()) throw Error(ErrorKind::invalid_parameter, "test function has wrong dimension");
  double e = 0.0;
  for (const auto& edge : g.edges()) {
    const double d = f[edge.u] - f[edge.v];
    e += d * d;
  }
  return e;
}

double rayleigh_quotient(const Graph& g, const TestFunction& f) {
  const double norm2 = f.squaredNorm();
  if (f.size() != g.n()) throw Error(ErrorKind::invalid_parameter, "test function has wrong dimension");
  if (norm2 == 0.0) throw Error(ErrorKind::undefined_quotient, "Rayleigh quotient of the zero function");
  return dirichlet_energy(g, f) / norm2;
}

TestFunction fiedler_vector(const Spectrum& s) {
  const int n = s.size();
  if (n < 2) throw Error(ErrorKind::invalid_k, "Fiedler vector needs at least 2 vertices");
  const Eigen::VectorXd ones = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  const Eigen::VectorXd v0 = s.eigenvectors.col(0);
  const Eigen::VectorXd v1 = s.eigenvectors.col(1);
  Eigen::VectorXd w = v1;
  if (s.eigenvalues[1] <= 1e-9 * std::max(1.0, s.eigenvalues.back())) {
    // lambda_1 = lambda_2 = 0: pick the direction in span{v0, v1} orthogonal
    // to the constants.
    Eigen::VectorXd mixed = ones.dot(v1) * v0 - ones.dot(v0) * v1;
    if (mixed.norm() > 1e-8) w = mixed;
  }
  w -= ones.dot(w) * ones;
  w.normalize();
  for (int i = 0; i < n; ++i) {
    if (std::abs(w[i]) > 1e-9) {
      if (w[i] < 0) w = -w;
      break;
    }
  }
  return w;
}

TestFunction fiedler_vector(const Graph& g, const SpectralOptions& opts) {
  if (g.n() < 2) throw Error(ErrorKind::invalid_k, "Fiedler vector needs at least 2 vertices");
  return fiedler_vector(spectrum(g, opts));
}

double block_lambda2(const Graph& g, const VertexSet& s, const SpectralOptions& opts) {
  if (s.size() < 2) return 0.0;
  return spectrum(induced_subgraph(g, s).graph, opts).lambda(2);
}

Lemma2Certificate lemma2_certificate(const Graph& g, const KPartition& p, const SpectralOptions& opts) {
  if (p.host_size() != g.n()) {
    throw Error(ErrorKind::invalid_partition, "partition host size does not match graph");
  }
  const int n = g.n();
  const int k = p.k();
  Lemma2Certificate cert;
  cert.psi.emplace_back(n, 1);
  std::int64_t prefix = 0;
  for (int i = 1; i < k; ++i) {
    prefix += p.block(i - 1).size();
    std::vector<std::int64_t> psi(n, 0);
    const std::int64_t next = p.block(i).size();
    for (int j = 0; j < i; ++j) {
      for (Vertex v : p.block(j).members()) psi[v] = next;
    }
    for (Vertex v : p.block(i).members()) psi[v] = -prefix;
    cert.psi.push_back(std::move(psi));
  }
  cert.orthogonal = true;
  for (std::size_t a = 0; a < cert.psi.size(); ++a) {
    for (std::size_t b = a + 1; b < cert.psi.size(); ++b) {
      std::int64_t dot = 0;
      for (int v = 0; v < n; ++v) dot += cert.psi[a][v] * cert.psi[b][v];
      if (dot != 0) cert.orthogonal = false;
    }
  }
  cert.lower_bound = std::numeric_limits<double>::infinity();
  for (const auto& block : p.blocks()) {
    const double l2 = block_lambda2(g, block, opts);
    cert.block_lambda2.push_back(l2);
    cert.lower_bound = std::min(cert.lower_bound, l2);
  }
  return cert;
}

RemarkBound remark_upper_bound(const Graph& g, const std::vector<VertexSet>& blocks, int m_count) {
  if (m_count < 1) throw Error(ErrorKind::invalid_parameter, "m_count must be at least 1");
  if (2 * m_count > static_cast<int>(blocks.size())) {
    throw Error(ErrorKind::invalid_parameter, "m_count " + std::to_string(m_count) +
                                                  " needs " + std::to_string(2 * m_count) + " blocks");
  }
  VertexSet seen(g.n());
  for (const auto& b : blocks) {
    if (b.host_size() != g.n()) throw Error(ErrorKind::invalid_set, "block exceeds vertex set");
    if (b.intersects(seen)) throw Error(ErrorKind::invalid_set, "blocks overlap");
    for (Vertex v : b.members()) seen.insert(v);
  }

  RemarkBound out;
  for (int m = 1; m <= m_count; ++m) out.block_indices.push_back(2 * m - 1);
  for (std::size_t a = 0; a < out.block_indices.size(); ++a) {
    for (std::size_t b = a + 1; b < out.block_indices.size(); ++b) {
      const auto& x = blocks[out.block_indices[a]];
      const auto& y = blocks[out.block_indices[b]];
      for (const auto& e : g.edges()) {
        if ((x.contains(e.u) && y.contains(e.v)) || (x.contains(e.v) && y.contains(e.u))) {
          throw Error(ErrorKind::invalid_set, "selected blocks are adjacent");
        }
      }
    }
  }

  std::vector<TestFunction> fs;
  for (int idx : out.block_indices) {
    const auto& block = blocks[idx];
    if (block.empty()) throw Error(ErrorKind::invalid_set, "empty block");
    TestFunction f = TestFunction::Zero(g.n());
    const double value = 1.0 / std::sqrt(static_cast<double>(block.size()));
    for (Vertex v : block.members()) f[v] = value;
    out.energies.push_back(dirichlet_energy(g, f));
    out.caps.push_back(2.0 / block.size());
    fs.push_back(std::move(f));
  }
  out.orthonormal = true;
  for (std::size_t a = 0; a < fs.size(); ++a) {
    if (std::abs(fs[a].squaredNorm() - 1.0) > 1e-12) out.orthonormal = false;
    for (std::size_t b = a + 1; b < fs.size(); ++b) {
      if (std::abs(fs[a].dot(fs[b])) > 1e-12) out.orthonormal = false;
    }
  }
  out.within_caps = true;
  for (std::size_t i = 0; i < out.energies.size(); ++i) {
    if (out.energies[i] > out.caps[i] + 1e-12) out.within_caps = false;
    out.bound = std::max(out.bound, out.energies[i]);
  }
  return out;
}

} // namespace mwc
