// Copyright (c) 2026 qwhnet developers
// SPDX-License-Identifier: Apache-2.0

#include "qwhnet/registers.hpp"

#include <numbers>
#include <stdexcept>

namespace qwhnet {

CMatrix qft_matrix(int dim) {
  if (dim < 1) throw std::invalid_argument("qft_matrix: dimension must be positive");
  CMatrix f(dim, dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      const double angle =
          2.0 * std::numbers::pi * static_cast<double>((static_cast<long>(j) * k) % dim) / dim;
      f(j, k) = scale * Complex{std::cos(angle), std::sin(angle)};
    }
  }
  return f;
}

StateVector::StateVector(RegisterLayout layout)
    : layout_(layout), amps_(CVector::Zero(layout.joint_dim())) {
  if (layout.phase_qubits < 1 || layout.data_qubits < 1) {
    throw std::invalid_argument("StateVector: registers need at least one qubit each");
  }
  amps_(0) = 1.0;
}

StateVector::StateVector(RegisterLayout layout, CVector amplitudes)
    : layout_(layout), amps_(std::move(amplitudes)) {
  if (amps_.size() != layout.joint_dim()) {
    throw std::invalid_argument("StateVector: amplitude count does not match the layout");
  }
}

void StateVector::apply_on_register(const CMatrix& op, Register which) {
  const int dim = layout_.dim(which);
  if (op.rows() != dim || op.cols() != dim) {
    throw std::invalid_argument("apply_on_register: operator dimension mismatch");
  }
  const int m_dim = layout_.phase_dim();
  const int n_dim = layout_.data_dim();
  if (which == Register::kData) {
    for (int p = 0; p < m_dim; ++p) {
      amps_.segment(static_cast<Eigen::Index>(p) * n_dim, n_dim) =
          (op * amps_.segment(static_cast<Eigen::Index>(p) * n_dim, n_dim)).eval();
    }
  } else {
    CVector column(m_dim);
    for (int d = 0; d < n_dim; ++d) {
      for (int p = 0; p < m_dim; ++p) column(p) = amps_(static_cast<Eigen::Index>(p) * n_dim + d);
      column = (op * column).eval();
      for (int p = 0; p < m_dim; ++p) amps_(static_cast<Eigen::Index>(p) * n_dim + d) = column(p);
    }
  }
}

void StateVector::apply_controlled_powers(const std::vector<CMatrix>& squared_powers,
                                          bool adjoint) {
  const int n_dim = layout_.data_dim();
  if (squared_powers.size() < static_cast<size_t>(layout_.phase_qubits)) {
    throw std::invalid_argument("apply_controlled_powers: need one power per phase qubit");
  }
  for (const CMatrix& power : squared_powers) {
    if (power.rows() != n_dim || power.cols() != n_dim) {
      throw std::invalid_argument("apply_controlled_powers: power dimension mismatch");
    }
  }
  const int m_dim = layout_.phase_dim();
  for (int k = 0; k < layout_.phase_qubits; ++k) {
    const CMatrix& power = squared_powers[static_cast<size_t>(k)];
    for (int p = 0; p < m_dim; ++p) {
      if ((p >> k) & 1) {
        auto block = amps_.segment(static_cast<Eigen::Index>(p) * n_dim, n_dim);
        if (adjoint) {
          block = (power.adjoint() * block).eval();
        } else {
          block = (power * block).eval();
        }
      }
    }
  }
}

void StateVector::apply_qft(Register which) { apply_on_register(qft_matrix(layout_.dim(which)), which); }

void StateVector::apply_inverse_qft(Register which) {
  apply_on_register(qft_matrix(layout_.dim(which)).adjoint(), which);
}

void StateVector::reflect_on_register(const CVector& axis, Register which) {
  const int dim = layout_.dim(which);
  if (axis.size() != dim) {
    throw std::invalid_argument("reflect_on_register: axis dimension mismatch");
  }
  const int m_dim = layout_.phase_dim();
  const int n_dim = layout_.data_dim();
  if (which == Register::kData) {
    for (int p = 0; p < m_dim; ++p) {
      auto block = amps_.segment(static_cast<Eigen::Index>(p) * n_dim, n_dim);
      const Complex inner = axis.dot(block);  // conjugates the axis
      block -= 2.0 * inner * axis;
    }
  } else {
    for (int d = 0; d < n_dim; ++d) {
      Complex inner{0.0, 0.0};
      for (int p = 0; p < m_dim; ++p) {
        inner += std::conj(axis(p)) * amps_(static_cast<Eigen::Index>(p) * n_dim + d);
      }
      for (int p = 0; p < m_dim; ++p) {
        amps_(static_cast<Eigen::Index>(p) * n_dim + d) -= 2.0 * inner * axis(p);
      }
    }
  }
}

void StateVector::reflect_about_zero_state() { amps_(0) = -amps_(0); }

RVector StateVector::register_probabilities(Register which) const {
  const int m_dim = layout_.phase_dim();
  const int n_dim = layout_.data_dim();
  RVector probs = RVector::Zero(layout_.dim(which));
  for (int p = 0; p < m_dim; ++p) {
    for (int d = 0; d < n_dim; ++d) {
      const double weight = std::norm(amps_(static_cast<Eigen::Index>(p) * n_dim + d));
      probs(which == Register::kPhase ? p : d) += weight;
    }
  }
  return probs;
}

double StateVector::data_register_fidelity(const CVector& target) const {
  if (target.size() != layout_.data_dim()) {
    throw std::invalid_argument("data_register_fidelity: target dimension mismatch");
  }
  if (!is_unit(target, 1e-10)) {
    throw std::invalid_argument("data_register_fidelity: target must be a unit vector");
  }
  const int m_dim = layout_.phase_dim();
  const int n_dim = layout_.data_dim();
  double overlap = 0.0;
  for (int p = 0; p < m_dim; ++p) {
    overlap += std::norm(target.dot(amps_.segment(static_cast<Eigen::Index>(p) * n_dim, n_dim)));
  }
  return std::sqrt(overlap);
}

double StateVector::hadamard_zero_probability(int phase_qubit) const {
  if (phase_qubit < 0 || phase_qubit >= layout_.phase_qubits) {
    throw std::invalid_argument("hadamard_zero_probability: phase qubit out of range");
  }
  const int m_dim = layout_.phase_dim();
  const int n_dim = layout_.data_dim();
  const int bit = 1 << phase_qubit;
  double prob = 0.0;
  for (int p = 0; p < m_dim; ++p) {
    if (p & bit) continue;
    const Eigen::Index lo = static_cast<Eigen::Index>(p) * n_dim;
    const Eigen::Index hi = static_cast<Eigen::Index>(p | bit) * n_dim;
    for (int d = 0; d < n_dim; ++d) {
      prob += 0.5 * std::norm(amps_(lo + d) + amps_(hi + d));
    }
  }
  return prob;
}

StateVector init_zero(RegisterLayout layout) { return StateVector(layout); }

double hadamard_qubit_estimate(const StateVector& state, int phase_qubit, int shots,
                               SplitRng& rng) {
  if (shots < 1) throw std::invalid_argument("hadamard_qubit_estimate: shots must be >= 1");
  const double p = state.hadamard_zero_probability(phase_qubit);
  return static_cast<double>(rng.binomial(shots, p)) / shots;
}

}  // namespace qwhnet
