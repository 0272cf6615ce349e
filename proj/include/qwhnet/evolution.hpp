// Copyright (c) 2026 qwhnet developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "qwhnet/linalg.hpp"

namespace qwhnet {

enum class Provenance { kExact, kTrotter };

/// Symmetric (half / full / half) operator-splitting plan for
/// exp(i 2 pi t sum_j x_j x_j^H), split over the rank-one terms.
struct TrotterPlan {
  std::vector<CVector> columns;
  double time = 1.0;
  int steps = 1;  // time slices; the single-slice product is raised to this power
};

/// One factor of the expanded splitting: exp(i 2 pi time x_[column] x_[column]^H).
struct TrotterFactor {
  int column = 0;
  double time = 0.0;
};

/// Expands one time slice of the plan into its 2k-1 factors, leftmost factor
/// first (the leftmost factor acts last on a ket). The recursion halves the
/// step of the last column and keeps it outermost:
///   S(x_1..x_k, t) = E(x_k, t/2) S(x_1..x_{k-1}, t) E(x_k, t/2)
std::vector<TrotterFactor> expand_plan(const TrotterPlan& plan);

/// exp(i 2 pi t x x^H) built by Householder conjugation: H D H^H where H
/// completes x/|x| to a unitary and D is the identity with the first entry
/// replaced by exp(i 2 pi t |x|^2).
CMatrix rank_one_exponential(const CVector& x, double t);

/// Dense product of the splitting: the single slice at time/steps, raised to
/// the steps-th power.
CMatrix strang_product(const TrotterPlan& plan);

/// Dense unitary with a repeated-squaring power cache, squared_powers()[k] = U^(2^k).
class EvolutionOperator {
 public:
  EvolutionOperator(CMatrix u, int power_count, Provenance provenance);

  const CMatrix& matrix() const { return powers_.front(); }
  const std::vector<CMatrix>& squared_powers() const { return powers_; }
  Provenance provenance() const { return provenance_; }
  int dimension() const { return static_cast<int>(powers_.front().rows()); }

 private:
  std::vector<CMatrix> powers_;
  Provenance provenance_;
};

/// Repeated-squaring cache builder; rejects non-unitary input.
EvolutionOperator power_cache(const CMatrix& u, int power_count,
                              Provenance provenance = Provenance::kExact);

/// exp(i 2 pi w t) with a power cache, via the spectral decomposition.
EvolutionOperator exact_evolution(const CMatrix& w, double t, int power_count);

/// Splitting-based evolution operator for the plan, with a power cache.
EvolutionOperator strang_split(const TrotterPlan& plan, int power_count);

/// True when lambda_max * t >= 1: eigenphases would wrap around the unit
/// circle and become ambiguous.
bool phase_wraparound_risk(const RVector& eigenvalues, double t);

}  // namespace qwhnet
