// Copyright (c) 2026 qwhnet developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "qwhnet/evolution.hpp"
#include "qwhnet/learning.hpp"
#include "qwhnet/registers.hpp"

namespace qwhnet {

/// Inputs whose projection onto the principal subspace carries less than this
/// much probability are rejected: amplification has nothing to work with.
inline constexpr double kDegenerateInputThreshold = 1e-6;

/// Reflection axis on the phase register that leaves the |0> branch alone and
/// mixes every other basis state: f = (0, 1, ..., 1) / sqrt(M - 1).
struct MarkingOperator {
  CVector f;
  double mu = 0.0;  // 1 / sqrt(M - 1)
};

MarkingOperator build_marking(const RegisterLayout& layout);

/// Coefficient recurrence for the iterates in the pair (|psi>, |f>|phibar>)
/// when every eigenphase is an exact multiple of 1/M. One amplification step
/// maps (a, b) through the transfer matrix [[c, 2 mu p_f], [-2 mu, -1]] with
/// c = 4 mu^2 p_f - 1, starting from (1, 0); |phibar> is the unnormalized
/// projection of the input onto the principal subspace, norm^2 = p_f.
struct SubspaceCoefficients {
  double c = 0.0;
  double mu = 0.0;
  double p_f = 0.0;
  double a = 1.0;
  double b = 0.0;

  SubspaceCoefficients(double mu_in, double p_f_in)
      : c(4.0 * mu_in * mu_in * p_f_in - 1.0), mu(mu_in), p_f(p_f_in) {}

  void advance() {
    const double a_next = c * a + 2.0 * mu * p_f * b;
    const double b_next = -2.0 * mu * a - b;
    a = a_next;
    b = b_next;
  }
};

struct IterationRecord {
  int iteration = 0;
  double p_zero = 0.0;    // phase-register probability of |0>
  double p_marked = 0.0;  // 1 - p_zero
  RVector phase_probabilities;
  double fidelity = 0.0;     // data register vs normalized principal projection
  RVector hadamard_exact;    // per phase qubit
  RVector hadamard_sampled;  // per phase qubit, shot-based
  std::optional<double> a;   // recurrence coefficients, exact-phase fixtures only
  std::optional<double> b;
  bool stop_fired = false;
};

struct IterationTrace {
  std::vector<IterationRecord> records;
  double initial_success_probability = 0.0;
  int stop_iteration = -1;  // first iteration where the stopping rule fired, -1 if never
  double stop_fidelity = 0.0;
  // The fidelity oscillates, and numerical leakage lets late revisits edge out
  // the principal crest by tiny margins. peak_iteration is the first crest
  // (rises strictly into it, does not rise out of it); for traces without a
  // crest it falls back to the first global argmax.
  int peak_iteration = 0;
  double peak_fidelity = 0.0;
  int min_p_zero_iteration = 0;  // first argmin of the p_zero column
};

struct StoppingRule {
  int shots = 10;
  double tolerance = 0.05;
};

/// Fires when every phase qubit's sampled Hadamard-basis P(|0>) reaches
/// 1 - tolerance.
bool stopping_rule_fires(const IterationRecord& record, const StoppingRule& rule);

class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unitary sending |0> to x (first column exactly x).
CMatrix build_input_preparation(const CVector& x);

/// The full algorithm: prepare |psi> by phase estimation over the evolution
/// operator, then iterate G = U_psi U_f to drain the zero-eigenvalue branches
/// until the data register approximates the normalized principal projection
/// of the input.
class QpcaPipeline {
 public:
  QpcaPipeline(RegisterLayout layout, EvolutionOperator evolution, CMatrix projector,
               CVector input);

  /// Exact evolution exp(i 2 pi W); projector and eigenphases from the
  /// spectral decomposition of W.
  static QpcaPipeline from_weights(RegisterLayout layout, const WeightMatrix& weights,
                                   const CVector& input);

  /// Splitting-based evolution built from the training columns; projector and
  /// eigenphases still come from the exact spectral decomposition.
  static QpcaPipeline from_training_set(RegisterLayout layout, const TrainingSet& data,
                                        const CVector& input, int trotter_steps);

  const RegisterLayout& layout() const { return layout_; }
  const EvolutionOperator& evolution() const { return evolution_; }
  const MarkingOperator& marking() const { return marking_; }
  const CMatrix& input_preparation() const { return input_prep_; }
  const CVector& input() const { return input_; }

  /// Normalized principal projection of the input (the retrieval target).
  const CVector& target() const { return target_; }
  double initial_success_probability() const { return success_probability_; }

  /// Known eigenphases enable the coefficient recurrence in run() when all of
  /// them are exact multiples of 1/M.
  void set_eigenphases(RVector phases);
  bool has_exact_phases() const { return exact_phases_; }
  std::optional<SubspaceCoefficients> make_exact_phase_oracle() const;

  StateVector prepared_state() const;
  void apply_pea(StateVector& state) const;
  void apply_pea_adjoint(StateVector& state) const;
  void apply_marking(StateVector& state) const;
  void apply_u_psi(StateVector& state) const;
  void apply_grover(StateVector& state) const;

  /// Runs max_iterations amplification steps (iteration 0 is the prepared
  /// state), recording the full trace; the stopping rule is evaluated from
  /// the sampled per-qubit estimates at every iteration.
  IterationTrace run(int max_iterations, const StoppingRule& rule, SplitRng& measurement_rng) const;

 private:
  RegisterLayout layout_;
  EvolutionOperator evolution_;
  CMatrix projector_;
  CVector input_;
  CVector target_;
  CMatrix input_prep_;
  MarkingOperator marking_;
  double success_probability_ = 0.0;
  std::optional<RVector> eigenphases_;
  bool exact_phases_ = false;
};

}  // namespace qwhnet
