// Copyright (c) 2026 qwhnet developers
// SPDX-License-Identifier: Apache-2.0

#include "qwhnet/linalg.hpp"

#include <numbers>
#include <stdexcept>

namespace qwhnet {

double max_abs(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

bool is_unit(const CVector& v, double tol) { return std::abs(v.norm() - 1.0) <= tol; }

bool is_unitary(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const CMatrix gram = a.adjoint() * a;
  return max_abs(gram - CMatrix::Identity(a.rows(), a.cols())) <= tol;
}

bool is_hermitian(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol;
}

CMatrix householder_unitary(const CVector& x) {
  if (!is_unit(x)) {
    throw std::invalid_argument("householder_unitary: input must be a unit vector");
  }
  const Eigen::Index n = x.size();
  Complex phase{1.0, 0.0};
  const double lead = std::abs(x(0));
  if (lead > 0.0) phase = x(0) / lead;

  CVector v = x / phase;  // leading entry now real and nonnegative
  v(0) -= 1.0;
  const double vnorm2 = v.squaredNorm();
  // identical to e_0 up to the leading phase: nothing to reflect
  if (vnorm2 < 1e-28) return phase * CMatrix::Identity(n, n);

  CMatrix h = CMatrix::Identity(n, n);
  h.noalias() -= (2.0 / vnorm2) * (v * v.adjoint());
  return phase * h;
}

SpectralDecomposition eig_hermitian(const CMatrix& a) {
  if (!is_hermitian(a)) {
    throw std::invalid_argument("eig_hermitian: input must be Hermitian");
  }
  const CMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  }
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

SingularValueDecomposition svd_small(const CMatrix& x) {
  Eigen::JacobiSVD<CMatrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return SingularValueDecomposition{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

CMatrix unitary_exponential(const CMatrix& w, double t) {
  const SpectralDecomposition spectral = eig_hermitian(w);
  const Eigen::Index n = w.rows();
  CVector phases(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double angle = 2.0 * std::numbers::pi * spectral.eigenvalues(i) * t;
    phases(i) = Complex{std::cos(angle), std::sin(angle)};
  }
  return spectral.eigenvectors * phases.asDiagonal() * spectral.eigenvectors.adjoint();
}

int rank_from_singular_values(const RVector& sigma, double rel_cutoff) {
  if (sigma.size() == 0) return 0;
  const double cutoff = rel_cutoff * sigma.maxCoeff();
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) ++rank;
  }
  return rank;
}

}  // namespace qwhnet
