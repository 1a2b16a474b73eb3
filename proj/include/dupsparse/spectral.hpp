#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "dupsparse/graph.hpp"

namespace dupsparse {

using DenseMatrix = Eigen::MatrixXd;

// Relative cutoff below which an eigenvalue counts as zero (nullspace).
inline constexpr double kEigenZeroTol = 1e-9;

// L = D - A: diagonal holds weighted degrees, off-diagonal (i,j) = -W(i,j).
inline DenseMatrix laplacian(const Graph& g) {
  DenseMatrix L = DenseMatrix::Zero(g.n(), g.n());
  for (const Edge& e : g.edges()) {
    L(e.u, e.u) += e.w;
    L(e.v, e.v) += e.w;
    L(e.u, e.v) -= e.w;
    L(e.v, e.u) -= e.w;
  }
  return L;
}

// D^{-1/2} L D^{-1/2}. Isolated vertices get zero rows and columns
// (pseudo-inverse convention for the degree matrix).
inline DenseMatrix normalized_laplacian(const Graph& g) {
  DenseMatrix L = laplacian(g);
  Eigen::VectorXd dinv_sqrt(g.n());
  for (int v = 0; v < g.n(); ++v) {
    double d = L(v, v);
    dinv_sqrt(v) = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
  }
  return dinv_sqrt.asDiagonal() * L * dinv_sqrt.asDiagonal();
}

// Moore-Penrose pseudoinverse of a symmetric PSD matrix via
// eigendecomposition, zeroing eigenvalues below kEigenZeroTol * lambda_max.
inline DenseMatrix pseudo_inverse(const DenseMatrix& m) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(m);
  const Eigen::VectorXd& vals = solver.eigenvalues();
  double lambda_max = vals.size() > 0 ? std::abs(vals(vals.size() - 1)) : 0.0;
  double cut = kEigenZeroTol * lambda_max;
  Eigen::VectorXd inv(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    inv(i) = vals(i) > cut ? 1.0 / vals(i) : 0.0;
  return solver.eigenvectors() * inv.asDiagonal() * solver.eigenvectors().transpose();
}

// R(u,v) = (e_u - e_v)^T L^+ (e_u - e_v) read off a precomputed L^+.
inline double effective_resistance_from_pinv(const DenseMatrix& lpinv, VertexId u, VertexId v) {
  return lpinv(u, u) + lpinv(v, v) - 2.0 * lpinv(u, v);
}

// Effective resistance between u and v; throws DisconnectedPair when the
// vertices lie in different components.
inline double effective_resistance(const Graph& g, VertexId u, VertexId v) {
  if (u == v) return 0.0;
  if (!same_component(g, u, v))
    throw DisconnectedPair("effective_resistance: vertices in different components");
  DenseMatrix lpinv = pseudo_inverse(laplacian(g));
  return effective_resistance_from_pinv(lpinv, u, v);
}

// Ascending eigenvalues of the normalized Laplacian.
inline Eigen::VectorXd normalized_spectrum(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(normalized_laplacian(g));
  return solver.eigenvalues();
}

}  // namespace dupsparse
