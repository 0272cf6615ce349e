// Copyright (c) 2026 qwhnet developers
// SPDX-License-Identifier: Apache-2.0

#include "qwhnet/evolution.hpp"

#include <numbers>
#include <stdexcept>

namespace qwhnet {

namespace {

void expand_recursive(int count, double t, std::vector<TrotterFactor>& out) {
  if (count == 1) {
    out.push_back({0, t});
    return;
  }
  out.push_back({count - 1, t / 2.0});
  expand_recursive(count - 1, t, out);
  out.push_back({count - 1, t / 2.0});
}

}  // namespace

std::vector<TrotterFactor> expand_plan(const TrotterPlan& plan) {
  if (plan.columns.empty()) throw std::invalid_argument("expand_plan: empty plan");
  std::vector<TrotterFactor> factors;
  factors.reserve(2 * plan.columns.size() - 1);
  expand_recursive(static_cast<int>(plan.columns.size()), plan.time / plan.steps, factors);
  return factors;
}

CMatrix rank_one_exponential(const CVector& x, double t) {
  const double norm = x.norm();
  if (norm == 0.0) throw std::invalid_argument("rank_one_exponential: zero vector");
  const Eigen::Index n = x.size();

  const CMatrix h = householder_unitary(x / norm);
  const double angle = 2.0 * std::numbers::pi * t * norm * norm;
  CVector diag = CVector::Ones(n);
  diag(0) = Complex{std::cos(angle), std::sin(angle)};
  return h * diag.asDiagonal() * h.adjoint();
}

CMatrix strang_product(const TrotterPlan& plan) {
  if (plan.steps < 1) throw std::invalid_argument("strang_product: steps must be positive");
  const std::vector<TrotterFactor> factors = expand_plan(plan);
  const Eigen::Index n = plan.columns.front().size();

  CMatrix slice = CMatrix::Identity(n, n);
  for (const TrotterFactor& f : factors) {
    slice = slice * rank_one_exponential(plan.columns[static_cast<size_t>(f.column)], f.time);
  }
  CMatrix out = slice;
  for (int s = 1; s < plan.steps; ++s) out = out * slice;
  return out;
}

EvolutionOperator::EvolutionOperator(CMatrix u, int power_count, Provenance provenance)
    : provenance_(provenance) {
  if (power_count < 1) throw std::invalid_argument("EvolutionOperator: power_count must be >= 1");
  if (!is_unitary(u)) throw std::invalid_argument("EvolutionOperator: matrix is not unitary");
  powers_.reserve(static_cast<size_t>(power_count));
  powers_.push_back(std::move(u));
  for (int k = 1; k < power_count; ++k) {
    powers_.push_back(powers_.back() * powers_.back());
  }
}

EvolutionOperator power_cache(const CMatrix& u, int power_count, Provenance provenance) {
  return EvolutionOperator(u, power_count, provenance);
}

EvolutionOperator exact_evolution(const CMatrix& w, double t, int power_count) {
  return EvolutionOperator(unitary_exponential(w, t), power_count, Provenance::kExact);
}

EvolutionOperator strang_split(const TrotterPlan& plan, int power_count) {
  return EvolutionOperator(strang_product(plan), power_count, Provenance::kTrotter);
}

bool phase_wraparound_risk(const RVector& eigenvalues, double t) {
  if (eigenvalues.size() == 0) return false;
  return eigenvalues.maxCoeff() * t >= 1.0;
}

}  // namespace qwhnet
