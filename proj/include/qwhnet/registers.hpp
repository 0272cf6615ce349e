// Copyright (c) 2026 qwhnet developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "qwhnet/linalg.hpp"
#include "qwhnet/rng.hpp"

namespace qwhnet {

enum class Register { kPhase, kData };

/// Two-register system: a phase register of m qubits (dimension M = 2^m) and
/// a data register of n qubits (dimension N = 2^n). The global amplitude
/// index is (phase index) * N + (data index); within each register the
/// leftmost qubit is the most significant bit of its index.
struct RegisterLayout {
  int phase_qubits = 1;  // m
  int data_qubits = 1;   // n

  int phase_dim() const { return 1 << phase_qubits; }
  int data_dim() const { return 1 << data_qubits; }
  Eigen::Index joint_dim() const {
    return static_cast<Eigen::Index>(phase_dim()) * data_dim();
  }
  int dim(Register which) const {
    return which == Register::kPhase ? phase_dim() : data_dim();
  }
};

/// Forward transform matrix with entries exp(+i 2 pi j k / dim) / sqrt(dim).
/// With this sign an eigenphase lambda of the evolution operator reads out at
/// phase index round(lambda * M) after the inverse transform.
CMatrix qft_matrix(int dim);

/// Joint state of the two registers. Operators are applied block-wise; no
/// (M*N) x (M*N) matrix is ever materialized.
class StateVector {
 public:
  /// |0>|0>
  explicit StateVector(RegisterLayout layout);
  StateVector(RegisterLayout layout, CVector amplitudes);

  const RegisterLayout& layout() const { return layout_; }
  const CVector& amplitudes() const { return amps_; }
  CVector& amplitudes() { return amps_; }
  double norm() const { return amps_.norm(); }

  /// Applies (op x I) or (I x op) depending on the target register.
  void apply_on_register(const CMatrix& op, Register which);

  /// For every phase index j, applies U^j to the data sub-block, using the
  /// repeated-squaring table squared_powers[k] = U^(2^k) (one entry per phase
  /// qubit). With adjoint set, applies (U^j)^H instead.
  void apply_controlled_powers(const std::vector<CMatrix>& squared_powers, bool adjoint = false);

  void apply_qft(Register which = Register::kPhase);
  void apply_inverse_qft(Register which = Register::kPhase);

  /// Reflection I - 2|axis><axis| acting on one register.
  void reflect_on_register(const CVector& axis, Register which);

  /// Reflection about the joint |0>|0> state (sign flip of the first amplitude).
  void reflect_about_zero_state();

  /// Marginal distribution of one register.
  RVector register_probabilities(Register which) const;

  /// sqrt(<target| rho_data |target>) for the reduced state of the data
  /// register; equals |<v|target>| when the data register is pure |v>.
  double data_register_fidelity(const CVector& target) const;

  /// Exact probability of reading |0> on one phase qubit after a Hadamard on
  /// that qubit (evaluated without disturbing the state). Qubit 0 is the
  /// least significant bit of the phase index.
  double hadamard_zero_probability(int phase_qubit) const;

 private:
  RegisterLayout layout_;
  CVector amps_;
};

StateVector init_zero(RegisterLayout layout);

/// Shot-based estimate of hadamard_zero_probability: draws
/// a ~ Binomial(shots, p) from the stream and returns a / shots.
double hadamard_qubit_estimate(const StateVector& state, int phase_qubit, int shots,
                               SplitRng& rng);

}  // namespace qwhnet
