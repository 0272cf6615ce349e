// Copyright (c) 2026 qwhnet developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qwhnet {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kUnitNormTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kHermitianTol = 1e-10;

/// Relative cutoff separating zero from nonzero singular values:
/// sigma <= kRankCutoff * sigma_max counts as zero.
inline constexpr double kRankCutoff = 1e-10;

/// Largest entry magnitude (max norm).
double max_abs(const CMatrix& a);

bool is_unit(const CVector& v, double tol = kUnitNormTol);
bool is_unitary(const CMatrix& a, double tol = kUnitaryTol);
bool is_hermitian(const CMatrix& a, double tol = kHermitianTol);

struct SpectralDecomposition {
  RVector eigenvalues;   // real, ascending
  CMatrix eigenvectors;  // orthonormal columns, a * col(i) = eigenvalues(i) * col(i)
};

struct SingularValueDecomposition {
  CMatrix left;             // orthonormal columns
  RVector singular_values;  // nonnegative, descending
  CMatrix right;            // orthonormal columns; input = left * diag * right^H
};

/// Unitary completion of a unit vector: returns U with U e_0 = x exactly.
///
/// For real x (more precisely, real leading entry) the result is the Hermitian
/// reflection exchanging e_0 and x, an involution. A complex leading entry is
/// rotated onto the real axis first and the reflector carries that phase, so
/// the first column is still exactly x; such a U is unitary but no longer
/// Hermitian (no Hermitian matrix has a non-real diagonal entry).
CMatrix householder_unitary(const CVector& x);

/// Hermitian eigendecomposition. Rejects non-Hermitian input.
SpectralDecomposition eig_hermitian(const CMatrix& a);

/// Thin SVD for desk-scale matrices.
SingularValueDecomposition svd_small(const CMatrix& x);

/// exp(i 2 pi w t) for Hermitian w, via the spectral decomposition.
CMatrix unitary_exponential(const CMatrix& w, double t);

/// Number of singular values above the relative rank cutoff.
int rank_from_singular_values(const RVector& sigma, double rel_cutoff = kRankCutoff);

}  // namespace qwhnet
