// Copyright (c) 2026 qwhnet developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qwhnet/pipeline.hpp"

namespace qwhnet {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Random benchmark case: dimension N (a power of two), ceil(N/2) nonzero
/// eigenphases drawn uniformly from [0, 1), the rest pinned to zero.
struct RandomCaseSpec {
  int dimension = 128;  // N
  std::uint64_t seed = 1;

  int principal_count() const { return (dimension + 1) / 2; }
};

struct RandomCase {
  CMatrix unitary;      // basis * diag(exp(i 2 pi d)) * basis^T
  CMatrix projector;    // onto the span of the nonzero-phase eigenvectors
  RVector eigenphases;  // d, first principal_count() entries nonzero
  RMatrix basis;        // orthonormal columns
  CVector input;        // unit, nonnegative entries
};

/// Modified Gram-Schmidt with one re-orthogonalization pass.
RMatrix gram_schmidt_orthonormalize(RMatrix a);

/// diag-in-a-basis unitary: basis * diag(exp(i 2 pi phases)) * basis^T.
CMatrix unitary_from_phases(const RMatrix& basis, const RVector& phases);

/// Deterministic in (spec): eigenphases, basis, and input each come from
/// their own seed substream.
RandomCase generate_random_case(const RandomCaseSpec& spec);

enum class EvolutionKind { kExact, kTrotter };

struct RunConfig {
  std::filesystem::path out_dir = "out";
  EvolutionKind evolution = EvolutionKind::kExact;
  int trotter_steps = 1;
  int max_iterations = 30;
  StoppingRule stop;
  std::uint64_t seed = 1;
  // random / sweep
  int dimension = 128;
  int phase_qubits = 6;
  std::vector<int> m_list = {1, 2, 3, 4, 5, 6};
  // learn
  LearningConfig learning;
};

/// The bundled 4x2 demo pattern matrix (columns pre-scaled by 1/10).
TrainingSet demo_training_set();

/// The two bundled probe inputs for the demo patterns, normalized.
std::vector<CVector> demo_inputs();

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

/// CSV schema: `iter,p_zero,p_marked,fidelity,` then `phase_p_0..phase_p_{M-1},`
/// then `h0_q0..h0_q{m-1},h0s_q0..h0s_q{m-1},` then `a_k,b_k` (the last two
/// empty unless the run had an exact-phase coefficient oracle).
void write_trace_csv(std::ostream& out, const IterationTrace& trace, const RegisterLayout& layout);

struct SweepEntry {
  int phase_qubits = 0;
  int peak_iteration = 0;
  double peak_fidelity = 0.0;
  int stop_iteration = -1;
};

/// Demo patterns, both probe inputs, exact and splitting-based evolution:
/// four trace CSVs plus a summary comparing the peak fidelities.
void run_example(const RunConfig& config);

/// One random case at (N, m, seed): one trace CSV plus a summary.
void run_random(const RunConfig& config);

/// One random case shared across the m-list (same seed, same case), one trace
/// CSV per m plus a summary table; members run concurrently.
void run_sweep(const RunConfig& config);

/// Learning-rule convergence on the demo patterns: per-epoch Frobenius error
/// and iterated spectrum. Rejects eta beyond the stability bound.
void run_learning_demo(const RunConfig& config);

}  // namespace qwhnet
