// Copyright (c) 2026 qwhnet developers
// SPDX-License-Identifier: Apache-2.0

#include "qwhnet/pipeline.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace qwhnet {

MarkingOperator build_marking(const RegisterLayout& layout) {
  const int m_dim = layout.phase_dim();
  const double mu = 1.0 / std::sqrt(static_cast<double>(m_dim - 1));
  CVector f = CVector::Constant(m_dim, Complex{mu, 0.0});
  f(0) = 0.0;
  return MarkingOperator{std::move(f), mu};
}

bool stopping_rule_fires(const IterationRecord& record, const StoppingRule& rule) {
  if (record.hadamard_sampled.size() == 0) return false;
  return record.hadamard_sampled.minCoeff() >= 1.0 - rule.tolerance;
}

CMatrix build_input_preparation(const CVector& x) { return householder_unitary(x); }

namespace {

CMatrix principal_projector(const SpectralDecomposition& spectral) {
  const double lambda_max = spectral.eigenvalues.size() > 0 ? spectral.eigenvalues.maxCoeff() : 0.0;
  const double cutoff = kRankCutoff * std::max(lambda_max, 0.0);
  const Eigen::Index n = spectral.eigenvectors.rows();
  CMatrix projector = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < spectral.eigenvalues.size(); ++i) {
    if (spectral.eigenvalues(i) > cutoff) {
      projector.noalias() +=
          spectral.eigenvectors.col(i) * spectral.eigenvectors.col(i).adjoint();
    }
  }
  return projector;
}

}  // namespace

QpcaPipeline::QpcaPipeline(RegisterLayout layout, EvolutionOperator evolution, CMatrix projector,
                           CVector input)
    : layout_(layout),
      evolution_(std::move(evolution)),
      projector_(std::move(projector)),
      input_(std::move(input)),
      marking_(build_marking(layout)) {
  if (evolution_.dimension() != layout_.data_dim()) {
    throw std::invalid_argument("QpcaPipeline: evolution operator does not fit the data register");
  }
  if (projector_.rows() != layout_.data_dim() || projector_.cols() != layout_.data_dim()) {
    throw std::invalid_argument("QpcaPipeline: projector does not fit the data register");
  }
  if (input_.size() != layout_.data_dim()) {
    throw std::invalid_argument("QpcaPipeline: input does not fit the data register");
  }
  if (!is_unit(input_)) {
    throw std::invalid_argument("QpcaPipeline: input must be a unit vector");
  }
  if (evolution_.squared_powers().size() < static_cast<size_t>(layout_.phase_qubits)) {
    throw std::invalid_argument("QpcaPipeline: power cache shorter than the phase register");
  }

  input_prep_ = build_input_preparation(input_);
  const CVector projection = projector_ * input_;
  success_probability_ = projection.squaredNorm();
  if (success_probability_ < kDegenerateInputThreshold) {
    throw DegenerateInputError(
        "input is (numerically) orthogonal to the principal subspace; nothing to amplify");
  }
  target_ = projection / projection.norm();
}

QpcaPipeline QpcaPipeline::from_weights(RegisterLayout layout, const WeightMatrix& weights,
                                        const CVector& input) {
  QpcaPipeline pipeline(layout, exact_evolution(weights.w, 1.0, layout.phase_qubits),
                        principal_projector(weights.spectral), input);
  pipeline.set_eigenphases(weights.spectral.eigenvalues);
  return pipeline;
}

QpcaPipeline QpcaPipeline::from_training_set(RegisterLayout layout, const TrainingSet& data,
                                             const CVector& input, int trotter_steps) {
  const WeightMatrix weights = weight_matrix(data);
  TrotterPlan plan;
  plan.columns.reserve(static_cast<size_t>(data.count()));
  for (int j = 0; j < data.count(); ++j) plan.columns.push_back(data.patterns.col(j));
  plan.time = 1.0;
  plan.steps = trotter_steps;
  QpcaPipeline pipeline(layout, strang_split(plan, layout.phase_qubits),
                        principal_projector(weights.spectral), input);
  pipeline.set_eigenphases(weights.spectral.eigenvalues);
  return pipeline;
}

void QpcaPipeline::set_eigenphases(RVector phases) {
  const double m_dim = static_cast<double>(layout_.phase_dim());
  exact_phases_ = true;
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    const double scaled = phases(i) * m_dim;
    if (std::abs(scaled - std::round(scaled)) > 1e-9) {
      exact_phases_ = false;
      break;
    }
  }
  eigenphases_ = std::move(phases);
}

std::optional<SubspaceCoefficients> QpcaPipeline::make_exact_phase_oracle() const {
  if (!exact_phases_) return std::nullopt;
  return SubspaceCoefficients(marking_.mu, success_probability_);
}

StateVector QpcaPipeline::prepared_state() const {
  StateVector state(layout_);
  apply_pea(state);
  return state;
}

void QpcaPipeline::apply_pea(StateVector& state) const {
  state.apply_on_register(input_prep_, Register::kData);
  state.apply_qft(Register::kPhase);
  state.apply_controlled_powers(evolution_.squared_powers());
  state.apply_inverse_qft(Register::kPhase);
}

void QpcaPipeline::apply_pea_adjoint(StateVector& state) const {
  state.apply_qft(Register::kPhase);
  state.apply_controlled_powers(evolution_.squared_powers(), /*adjoint=*/true);
  state.apply_inverse_qft(Register::kPhase);
  state.apply_on_register(input_prep_.adjoint(), Register::kData);
}

void QpcaPipeline::apply_marking(StateVector& state) const {
  state.reflect_on_register(marking_.f, Register::kPhase);
}

void QpcaPipeline::apply_u_psi(StateVector& state) const {
  apply_pea_adjoint(state);
  state.reflect_about_zero_state();
  apply_pea(state);
}

void QpcaPipeline::apply_grover(StateVector& state) const {
  apply_marking(state);
  apply_u_psi(state);
}

IterationTrace QpcaPipeline::run(int max_iterations, const StoppingRule& rule,
                                 SplitRng& measurement_rng) const {
  if (max_iterations < 0) throw std::invalid_argument("run: max_iterations must be >= 0");
  if (rule.shots < 1) throw std::invalid_argument("run: stopping rule needs at least one shot");

  IterationTrace trace;
  trace.initial_success_probability = success_probability_;
  trace.records.reserve(static_cast<size_t>(max_iterations) + 1);

  std::optional<SubspaceCoefficients> oracle = make_exact_phase_oracle();
  StateVector state = prepared_state();

  for (int k = 0; k <= max_iterations; ++k) {
    if (k > 0) {
      apply_grover(state);
      if (oracle) oracle->advance();
    }

    IterationRecord record;
    record.iteration = k;
    record.phase_probabilities = state.register_probabilities(Register::kPhase);
    record.p_zero = record.phase_probabilities(0);
    record.p_marked = 1.0 - record.p_zero;
    record.fidelity = state.data_register_fidelity(target_);
    record.hadamard_exact.resize(layout_.phase_qubits);
    record.hadamard_sampled.resize(layout_.phase_qubits);
    for (int q = 0; q < layout_.phase_qubits; ++q) {
      record.hadamard_exact(q) = state.hadamard_zero_probability(q);
      record.hadamard_sampled(q) =
          hadamard_qubit_estimate(state, q, rule.shots, measurement_rng);
    }
    if (oracle) {
      record.a = oracle->a;
      record.b = oracle->b;
    }
    record.stop_fired = stopping_rule_fires(record, rule);
    if (record.stop_fired && trace.stop_iteration < 0) {
      trace.stop_iteration = k;
      trace.stop_fidelity = record.fidelity;
    }
    trace.records.push_back(std::move(record));
  }

  int crest = -1;
  for (size_t k = 1; k < trace.records.size(); ++k) {
    const bool rises = trace.records[k].fidelity > trace.records[k - 1].fidelity + 1e-12;
    const bool crests = k + 1 == trace.records.size() ||
                        trace.records[k + 1].fidelity <= trace.records[k].fidelity + 1e-12;
    if (rises && crests) {
      crest = static_cast<int>(k);
      break;
    }
  }
  if (crest < 0) {
    // no crest: flat or falling trace, take the first global argmax
    double best = -1.0;
    for (size_t k = 0; k < trace.records.size(); ++k) {
      if (trace.records[k].fidelity > best + 1e-15) {
        best = trace.records[k].fidelity;
        crest = static_cast<int>(k);
      }
    }
  }
  trace.peak_iteration = trace.records[static_cast<size_t>(crest)].iteration;
  trace.peak_fidelity = trace.records[static_cast<size_t>(crest)].fidelity;

  double min_p_zero = std::numeric_limits<double>::infinity();
  for (const IterationRecord& record : trace.records) {
    if (record.p_zero < min_p_zero - 1e-15) {
      min_p_zero = record.p_zero;
      trace.min_p_zero_iteration = record.iteration;
    }
  }
  return trace;
}

}  // namespace qwhnet
