// Copyright (c) 2026 qwhnet developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "qwhnet/experiments.hpp"
#include "qwhnet/pipeline.hpp"

namespace test_helpers {

using qwhnet::CMatrix;
using qwhnet::Complex;
using qwhnet::CVector;
using qwhnet::RVector;

template <typename A, typename B>
double max_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return (a.derived() - b.derived()).cwiseAbs().maxCoeff();
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

inline CVector random_real_unit_vector(int dim, std::uint64_t seed) {
  qwhnet::SplitRng rng(seed, qwhnet::DrawSite::kInputVector);
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex{rng.gaussian(), 0.0};
  return v / v.norm();
}

inline CVector random_complex_unit_vector(int dim, std::uint64_t seed) {
  qwhnet::SplitRng rng(seed, qwhnet::DrawSite::kInputVector);
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex{rng.gaussian(), rng.gaussian()};
  return v / v.norm();
}

inline CVector random_complex_vector(int dim, std::uint64_t seed) {
  qwhnet::SplitRng rng(seed, qwhnet::DrawSite::kInputVector);
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex{rng.gaussian(), rng.gaussian()};
  return v;
}

inline CMatrix random_unitary(int dim, std::uint64_t seed) {
  qwhnet::SplitRng rng(seed, qwhnet::DrawSite::kBasisMatrix);
  CMatrix a(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) a(i, j) = Complex{rng.gaussian(), rng.gaussian()};
  }
  // complex modified Gram-Schmidt, two passes
  for (int j = 0; j < dim; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) {
        a.col(j) -= a.col(i).dot(a.col(j)) * a.col(i);
      }
    }
    a.col(j) /= a.col(j).norm();
  }
  return a;
}

inline CMatrix random_hermitian(int dim, std::uint64_t seed) {
  qwhnet::SplitRng rng(seed, qwhnet::DrawSite::kBasisMatrix);
  CMatrix a(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) a(i, j) = Complex{rng.gaussian(), rng.gaussian()};
  }
  return 0.5 * (a + a.adjoint());
}

// dense (op x I) or (I x op) on the joint space
inline CMatrix dense_on_register(const CMatrix& op, const qwhnet::RegisterLayout& layout,
                                 qwhnet::Register which) {
  const CMatrix eye_phase = CMatrix::Identity(layout.phase_dim(), layout.phase_dim());
  const CMatrix eye_data = CMatrix::Identity(layout.data_dim(), layout.data_dim());
  return which == qwhnet::Register::kPhase ? kron(op, eye_data) : kron(eye_phase, op);
}

// dense sum_j |j><j| x U^j
inline CMatrix dense_controlled_powers(const CMatrix& u, const qwhnet::RegisterLayout& layout) {
  const int m_dim = layout.phase_dim();
  const int n_dim = layout.data_dim();
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(m_dim) * n_dim,
                              static_cast<Eigen::Index>(m_dim) * n_dim);
  CMatrix u_power = CMatrix::Identity(n_dim, n_dim);
  for (int j = 0; j < m_dim; ++j) {
    out.block(static_cast<Eigen::Index>(j) * n_dim, static_cast<Eigen::Index>(j) * n_dim, n_dim,
              n_dim) = u_power;
    u_power = u_power * u;
  }
  return out;
}

// dense U_PEA on the joint space, from its four pieces
inline CMatrix dense_pea(const qwhnet::QpcaPipeline& pipeline) {
  const qwhnet::RegisterLayout& layout = pipeline.layout();
  const CMatrix qft = qwhnet::qft_matrix(layout.phase_dim());
  const CMatrix a = dense_on_register(pipeline.input_preparation(), layout, qwhnet::Register::kData);
  const CMatrix b = dense_on_register(qft, layout, qwhnet::Register::kPhase);
  const CMatrix c = dense_controlled_powers(pipeline.evolution().matrix(), layout);
  const CMatrix d = dense_on_register(qft.adjoint(), layout, qwhnet::Register::kPhase);
  return d * c * b * a;
}

/// Exact-phase test problem: an 8-dimensional weight matrix whose eigenvalues
/// are multiples of 1/16, read by a 4-qubit phase register. The input weights
/// put p_f where one amplification step count lands right on the fidelity
/// peak. Everything is deterministic.
struct ExactPhaseFixture {
  qwhnet::RegisterLayout layout;
  qwhnet::WeightMatrix weights;
  CVector input;
  CMatrix projector;
  RVector principal_overlaps;  // input overlaps with the nonzero-eigenvalue eigenvectors
  double p_f = 0.0;
};

inline ExactPhaseFixture make_exact_phase_fixture(double principal_weight = 0.068) {
  const int n = 8;
  qwhnet::SplitRng rng(7, qwhnet::DrawSite::kBasisMatrix);
  qwhnet::RMatrix g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = rng.gaussian();
  }
  const qwhnet::RMatrix basis = qwhnet::gram_schmidt_orthonormalize(g);

  // eigenvalue multiples of 1/16 at basis columns 0..2; the rest are zero
  RVector lambdas = RVector::Zero(n);
  lambdas(0) = 5.0 / 16.0;
  lambdas(1) = 9.0 / 16.0;
  lambdas(2) = 12.0 / 16.0;

  ExactPhaseFixture fixture;
  fixture.layout = qwhnet::RegisterLayout{4, 3};

  CMatrix w = CMatrix::Zero(n, n);
  fixture.projector = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const CVector q = basis.col(j).cast<Complex>();
    w.noalias() += lambdas(j) * (q * q.adjoint());
    if (lambdas(j) > 0.0) fixture.projector.noalias() += q * q.adjoint();
  }
  w = 0.5 * (w + w.adjoint());
  fixture.weights = qwhnet::WeightMatrix{w, qwhnet::eig_hermitian(w)};

  // input: fixed direction inside the principal subspace plus a zero-eigenvalue
  // remainder, mixed so that |projection|^2 = principal_weight
  CVector principal = 0.60 * basis.col(0).cast<Complex>() + 0.55 * basis.col(1).cast<Complex>() +
                      0.45 * basis.col(2).cast<Complex>();
  principal /= principal.norm();
  CVector rest = 0.8 * basis.col(3).cast<Complex>() + 0.6 * basis.col(5).cast<Complex>();
  rest /= rest.norm();
  fixture.input =
      std::sqrt(principal_weight) * principal + std::sqrt(1.0 - principal_weight) * rest;
  fixture.input /= fixture.input.norm();
  fixture.p_f = (fixture.projector * fixture.input).squaredNorm();

  fixture.principal_overlaps = RVector(3);
  for (int j = 0; j < 3; ++j) {
    fixture.principal_overlaps(j) =
        basis.col(j).cast<Complex>().dot(fixture.input).real();
  }
  return fixture;
}

}  // namespace test_helpers
