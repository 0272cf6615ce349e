// Copyright (c) 2026 qwhnet developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "qwhnet/linalg.hpp"

namespace qwhnet {

/// Stored patterns, one per column. `scale` records a factor already applied
/// to the raw data (the bundled demo set is pre-scaled by 1/10).
struct TrainingSet {
  CMatrix patterns;
  double scale = 1.0;

  int dimension() const { return static_cast<int>(patterns.rows()); }
  int count() const { return static_cast<int>(patterns.cols()); }
};

/// W = X X^H with its cached spectral decomposition.
struct WeightMatrix {
  CMatrix w;
  SpectralDecomposition spectral;

  double max_eigenvalue() const { return spectral.eigenvalues.maxCoeff(); }
};

WeightMatrix weight_matrix(const TrainingSet& data);

struct LearningConfig {
  double eta = 1.0;
  long epochs = 1000;
};

/// Largest learning constant for which the iteration still converges: 2 / lambda_max.
double stability_bound(const WeightMatrix& w);

/// One batch update: W + eta * (X - W X) X^H.
CMatrix widrow_hoff_step(const CMatrix& w_prev, const TrainingSet& data, double eta);

/// Closed-form eigenvalue trajectory after `epoch` updates: 1 - (1 - eta*lambda)^epoch.
RVector eigenvalue_flattening(const RVector& eigenvalues, double eta, long epoch);

/// Limit of the learning iteration: the orthogonal projector Q Q^H onto the
/// span of the left singular vectors of X with nonzero singular value.
CMatrix limit_weights(const TrainingSet& data);

struct NetworkOutput {
  CVector output;                  // Q Q^H x, possibly zero
  double success_probability = 0;  // squared norm of the projection
};

/// Response of the trained network to an input.
NetworkOutput network_output(const TrainingSet& data, const CVector& input);

struct LearningEpochRecord {
  long epoch = 0;
  double frobenius_error = 0;  // distance of the iterate from the limit projector
  RVector eigenvalues;         // spectrum of the iterate, descending
};

struct LearningTrace {
  std::vector<LearningEpochRecord> epochs;
  CMatrix final_weights;
  bool converged = false;
};

/// Iterate the learning rule from W = 0, logging every epoch. Stops at the
/// epoch cap or once successive iterates differ by at most `step_tol` in
/// Frobenius norm.
LearningTrace run_widrow_hoff(const TrainingSet& data, const LearningConfig& config,
                              double step_tol = 1e-12);

}  // namespace qwhnet
