// Copyright (c) 2026 qwhnet developers
// SPDX-License-Identifier: Apache-2.0

#include "qwhnet/learning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qwhnet {

WeightMatrix weight_matrix(const TrainingSet& data) {
  if (data.count() < 1) throw std::invalid_argument("weight_matrix: empty training set");
  CMatrix w = data.patterns * data.patterns.adjoint();
  w = 0.5 * (w + w.adjoint());
  return WeightMatrix{w, eig_hermitian(w)};
}

double stability_bound(const WeightMatrix& w) {
  const double lambda_max = w.max_eigenvalue();
  if (lambda_max <= 0.0) {
    throw std::invalid_argument("stability_bound: weight matrix has no positive eigenvalue");
  }
  return 2.0 / lambda_max;
}

CMatrix widrow_hoff_step(const CMatrix& w_prev, const TrainingSet& data, double eta) {
  if (w_prev.rows() != data.dimension() || w_prev.cols() != data.dimension()) {
    throw std::invalid_argument("widrow_hoff_step: weight/pattern dimension mismatch");
  }
  const CMatrix& x = data.patterns;
  return w_prev + eta * (x - w_prev * x) * x.adjoint();
}

RVector eigenvalue_flattening(const RVector& eigenvalues, double eta, long epoch) {
  if (eta <= 0.0) throw std::invalid_argument("eigenvalue_flattening: eta must be positive");
  RVector out(eigenvalues.size());
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    out(i) = 1.0 - std::pow(1.0 - eta * eigenvalues(i), static_cast<double>(epoch));
  }
  return out;
}

CMatrix limit_weights(const TrainingSet& data) {
  if (max_abs(data.patterns) == 0.0) {
    throw std::invalid_argument("limit_weights: all-zero training set");
  }
  const SingularValueDecomposition svd = svd_small(data.patterns);
  const int rank = rank_from_singular_values(svd.singular_values);
  const CMatrix principal = svd.left.leftCols(rank);
  return principal * principal.adjoint();
}

NetworkOutput network_output(const TrainingSet& data, const CVector& input) {
  if (input.size() != data.dimension()) {
    throw std::invalid_argument("network_output: input dimension mismatch");
  }
  const CMatrix projector = limit_weights(data);
  CVector out = projector * input;
  return NetworkOutput{out, out.squaredNorm()};
}

namespace {

RVector descending_spectrum(const CMatrix& w) {
  RVector values = eig_hermitian(w).eigenvalues;
  std::sort(values.begin(), values.end(), std::greater<double>());
  return values;
}

}  // namespace

LearningTrace run_widrow_hoff(const TrainingSet& data, const LearningConfig& config,
                              double step_tol) {
  const CMatrix limit = limit_weights(data);
  const int n = data.dimension();

  LearningTrace trace;
  CMatrix w = CMatrix::Zero(n, n);
  trace.epochs.push_back({0, (w - limit).norm(), descending_spectrum(w)});
  for (long epoch = 1; epoch <= config.epochs; ++epoch) {
    const CMatrix next = widrow_hoff_step(w, data, config.eta);
    const double step = (next - w).norm();
    w = next;
    trace.epochs.push_back({epoch, (w - limit).norm(), descending_spectrum(w)});
    if (step <= step_tol) {
      trace.converged = true;
      break;
    }
  }
  trace.final_weights = w;
  return trace;
}

}  // namespace qwhnet
