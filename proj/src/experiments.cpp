// Copyright (c) 2026 qwhnet developers
// SPDX-License-Identifier: Apache-2.0

#include "qwhnet/experiments.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <numbers>
#include <ostream>
#include <system_error>

namespace qwhnet {

namespace fs = std::filesystem;

RMatrix gram_schmidt_orthonormalize(RMatrix a) {
  const Eigen::Index cols = a.cols();
  for (Eigen::Index j = 0; j < cols; ++j) {
    // two passes: plain MGS leaves O(eps * kappa) residues on ill-scaled input
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < j; ++i) {
        a.col(j) -= a.col(i).dot(a.col(j)) * a.col(i);
      }
    }
    const double norm = a.col(j).norm();
    if (norm < 1e-12) {
      throw std::runtime_error("gram_schmidt_orthonormalize: rank-deficient input");
    }
    a.col(j) /= norm;
  }
  return a;
}

CMatrix unitary_from_phases(const RMatrix& basis, const RVector& phases) {
  if (basis.rows() != basis.cols() || basis.rows() != phases.size()) {
    throw std::invalid_argument("unitary_from_phases: dimension mismatch");
  }
  CVector diag(phases.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    const double angle = 2.0 * std::numbers::pi * phases(i);
    diag(i) = Complex{std::cos(angle), std::sin(angle)};
  }
  const CMatrix b = basis.cast<Complex>();
  return b * diag.asDiagonal() * b.adjoint();
}

RandomCase generate_random_case(const RandomCaseSpec& spec) {
  const int n = spec.dimension;
  if (n < 2 || (n & (n - 1)) != 0) {
    throw ConfigError("random case dimension must be a power of two >= 2");
  }
  const int npc = spec.principal_count();

  RandomCase out;

  SplitRng phase_rng(spec.seed, DrawSite::kEigenphases);
  out.eigenphases = RVector::Zero(n);
  for (int i = 0; i < n; ++i) out.eigenphases(i) = phase_rng.uniform();
  for (int i = npc; i < n; ++i) out.eigenphases(i) = 0.0;

  SplitRng basis_rng(spec.seed, DrawSite::kBasisMatrix);
  RMatrix gaussian(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) gaussian(i, j) = basis_rng.gaussian();
  }
  out.basis = gram_schmidt_orthonormalize(std::move(gaussian));
  out.unitary = unitary_from_phases(out.basis, out.eigenphases);

  out.projector = CMatrix::Zero(n, n);
  for (int j = 0; j < npc; ++j) {
    if (out.eigenphases(j) > 0.0) {
      const CVector q = out.basis.col(j).cast<Complex>();
      out.projector.noalias() += q * q.adjoint();
    }
  }

  SplitRng input_rng(spec.seed, DrawSite::kInputVector);
  out.input = CVector(n);
  for (int i = 0; i < n; ++i) out.input(i) = Complex{input_rng.uniform(), 0.0};
  out.input /= out.input.norm();
  return out;
}

TrainingSet demo_training_set() {
  RMatrix raw(4, 2);
  raw << -1, 1,
         -1, -1,
          1, -1,
         -1, 1;
  return TrainingSet{0.1 * raw.cast<Complex>(), 0.1};
}

std::vector<CVector> demo_inputs() {
  CVector a(4);
  a << 0.3517, 0.3058, 0.6136, 0.6374;
  CVector b(4);
  b << 0.7730, 0.1919, 0.1404, 0.5881;
  a /= a.norm();
  b /= b.norm();
  return {a, b};
}

std::string format_double(double value) {
  char buffer[64];
  const std::to_chars_result res = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, res.ptr);
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace,
                     const RegisterLayout& layout) {
  const int m_dim = layout.phase_dim();
  out << "iter,p_zero,p_marked,fidelity";
  for (int j = 0; j < m_dim; ++j) out << ",phase_p_" << j;
  for (int q = 0; q < layout.phase_qubits; ++q) out << ",h0_q" << q;
  for (int q = 0; q < layout.phase_qubits; ++q) out << ",h0s_q" << q;
  out << ",a_k,b_k\n";

  for (const IterationRecord& record : trace.records) {
    out << record.iteration << ',' << format_double(record.p_zero) << ','
        << format_double(record.p_marked) << ',' << format_double(record.fidelity);
    for (int j = 0; j < m_dim; ++j) out << ',' << format_double(record.phase_probabilities(j));
    for (int q = 0; q < layout.phase_qubits; ++q) {
      out << ',' << format_double(record.hadamard_exact(q));
    }
    for (int q = 0; q < layout.phase_qubits; ++q) {
      out << ',' << format_double(record.hadamard_sampled(q));
    }
    out << ',' << (record.a ? format_double(*record.a) : std::string())
        << ',' << (record.b ? format_double(*record.b) : std::string()) << '\n';
  }
}

namespace {

void validate_common(const RunConfig& config) {
  if (config.max_iterations < 0) throw ConfigError("max-iter must be >= 0");
  if (config.trotter_steps < 1) throw ConfigError("trotter-steps must be >= 1");
  if (config.stop.shots < 1) throw ConfigError("shots must be >= 1");
  if (config.stop.tolerance < 0.0 || config.stop.tolerance >= 1.0) {
    throw ConfigError("stop-tol must lie in [0, 1)");
  }
}

fs::path prepare_out_dir(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + config.out_dir.string() + ": " +
                        ec.message());
  return config.out_dir;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path.string());
  return out;
}

void require_written(const std::ofstream& out, const fs::path& path) {
  if (!out) throw IoError("failed while writing: " + path.string());
}

struct TraceResult {
  IterationTrace trace;
  RegisterLayout layout;
};

TraceResult run_demo_case(const RunConfig& config, const CVector& input, EvolutionKind kind) {
  const TrainingSet data = demo_training_set();
  const RegisterLayout layout{config.phase_qubits, 2};
  QpcaPipeline pipeline =
      kind == EvolutionKind::kExact
          ? QpcaPipeline::from_weights(layout, weight_matrix(data), input)
          : QpcaPipeline::from_training_set(layout, data, input, config.trotter_steps);
  SplitRng rng(config.seed, DrawSite::kMeasurement);
  return TraceResult{pipeline.run(config.max_iterations, config.stop, rng), layout};
}

int integer_log2(int value) {
  int bits = 0;
  while ((1 << bits) < value) ++bits;
  return bits;
}

QpcaPipeline pipeline_from_case(const RandomCase& random_case, const RunConfig& config,
                                int phase_qubits) {
  const int n = static_cast<int>(random_case.unitary.rows());
  const RegisterLayout layout{phase_qubits, integer_log2(n)};
  if (config.evolution == EvolutionKind::kExact) {
    QpcaPipeline pipeline(layout, power_cache(random_case.unitary, phase_qubits),
                          random_case.projector, random_case.input);
    pipeline.set_eigenphases(random_case.eigenphases);
    return pipeline;
  }
  // splitting route: rebuild the generator from rank-one columns sqrt(d_j) q_j
  TrotterPlan plan;
  for (Eigen::Index j = 0; j < random_case.eigenphases.size(); ++j) {
    const double d = random_case.eigenphases(j);
    if (d > 0.0) {
      plan.columns.push_back(std::sqrt(d) * random_case.basis.col(j).cast<Complex>());
    }
  }
  plan.time = 1.0;
  plan.steps = config.trotter_steps;
  QpcaPipeline pipeline(layout, strang_split(plan, phase_qubits), random_case.projector,
                        random_case.input);
  pipeline.set_eigenphases(random_case.eigenphases);
  return pipeline;
}

}  // namespace

void run_example(const RunConfig& config) {
  validate_common(config);
  if (config.phase_qubits < 1) throw ConfigError("phase register needs at least one qubit");
  const fs::path dir = prepare_out_dir(config);

  const std::vector<CVector> inputs = demo_inputs();
  const char* labels[] = {"a", "b"};

  std::ofstream summary = open_output(dir / "example_summary.txt");
  for (size_t i = 0; i < inputs.size(); ++i) {
    TraceResult exact = run_demo_case(config, inputs[i], EvolutionKind::kExact);
    TraceResult trotter = run_demo_case(config, inputs[i], EvolutionKind::kTrotter);

    for (const auto* pair : {&exact, &trotter}) {
      const bool is_exact = pair == &exact;
      const fs::path path =
          dir / (std::string("example_") + labels[i] + (is_exact ? "_exact.csv" : "_trotter.csv"));
      std::ofstream out = open_output(path);
      write_trace_csv(out, pair->trace, pair->layout);
      require_written(out, path);
    }

    summary << "input " << labels[i]
            << ": peak_fidelity_exact=" << format_double(exact.trace.peak_fidelity)
            << " at iter " << exact.trace.peak_iteration
            << ", peak_fidelity_trotter=" << format_double(trotter.trace.peak_fidelity)
            << " at iter " << trotter.trace.peak_iteration << ", abs_diff="
            << format_double(std::abs(exact.trace.peak_fidelity - trotter.trace.peak_fidelity))
            << "\n";
  }
  require_written(summary, dir / "example_summary.txt");
}

void run_random(const RunConfig& config) {
  validate_common(config);
  if (config.phase_qubits < 1) throw ConfigError("phase register needs at least one qubit");
  const fs::path dir = prepare_out_dir(config);

  const RandomCase random_case = generate_random_case({config.dimension, config.seed});
  QpcaPipeline pipeline = pipeline_from_case(random_case, config, config.phase_qubits);
  SplitRng rng(config.seed, DrawSite::kMeasurement);
  const IterationTrace trace = pipeline.run(config.max_iterations, config.stop, rng);

  const std::string stem = "random_n" + std::to_string(config.dimension) + "_m" +
                           std::to_string(config.phase_qubits) + "_seed" +
                           std::to_string(config.seed);
  const fs::path trace_path = dir / (stem + ".csv");
  std::ofstream out = open_output(trace_path);
  write_trace_csv(out, trace, pipeline.layout());
  require_written(out, trace_path);

  const fs::path summary_path = dir / (stem + "_summary.txt");
  std::ofstream summary = open_output(summary_path);
  summary << "n=" << config.dimension << " m=" << config.phase_qubits
          << " seed=" << config.seed
          << " p_f=" << format_double(trace.initial_success_probability)
          << " peak_iter=" << trace.peak_iteration
          << " peak_fidelity=" << format_double(trace.peak_fidelity)
          << " stop_iter=" << trace.stop_iteration
          << " stop_fidelity=" << format_double(trace.stop_fidelity) << "\n";
  require_written(summary, summary_path);
}

void run_sweep(const RunConfig& config) {
  validate_common(config);
  if (config.m_list.empty()) throw ConfigError("sweep needs a nonempty m-list");
  for (int m : config.m_list) {
    if (m < 1) throw ConfigError("sweep m values must be >= 1");
  }
  const fs::path dir = prepare_out_dir(config);

  const RandomCase random_case = generate_random_case({config.dimension, config.seed});

  std::vector<std::future<TraceResult>> futures;
  futures.reserve(config.m_list.size());
  for (int m : config.m_list) {
    futures.push_back(std::async(std::launch::async, [&, m] {
      QpcaPipeline pipeline = pipeline_from_case(random_case, config, m);
      SplitRng rng(config.seed, DrawSite::kMeasurement);
      return TraceResult{pipeline.run(config.max_iterations, config.stop, rng),
                         pipeline.layout()};
    }));
  }

  std::vector<SweepEntry> entries;
  for (size_t i = 0; i < futures.size(); ++i) {
    const TraceResult result = futures[i].get();
    const int m = config.m_list[i];
    const fs::path path = dir / ("sweep_m" + std::to_string(m) + ".csv");
    std::ofstream out = open_output(path);
    write_trace_csv(out, result.trace, result.layout);
    require_written(out, path);
    entries.push_back(SweepEntry{m, result.trace.peak_iteration, result.trace.peak_fidelity,
                                 result.trace.stop_iteration});
  }

  const fs::path summary_path = dir / "sweep_summary.txt";
  std::ofstream summary = open_output(summary_path);
  summary << "m,peak_iter,peak_fidelity,stop_iter\n";
  for (const SweepEntry& e : entries) {
    summary << e.phase_qubits << ',' << e.peak_iteration << ','
            << format_double(e.peak_fidelity) << ',' << e.stop_iteration << "\n";
  }
  require_written(summary, summary_path);
}

void run_learning_demo(const RunConfig& config) {
  validate_common(config);
  if (config.learning.epochs < 0) throw ConfigError("epochs must be >= 0");
  if (config.learning.eta <= 0.0) throw ConfigError("eta must be positive");

  const TrainingSet data = demo_training_set();
  const double bound = stability_bound(weight_matrix(data));
  if (config.learning.eta > bound) {
    throw ConfigError("eta " + format_double(config.learning.eta) +
                      " violates the stability bound " + format_double(bound));
  }
  const fs::path dir = prepare_out_dir(config);

  const LearningTrace trace = run_widrow_hoff(data, config.learning);
  const int n = data.dimension();

  const fs::path trace_path = dir / "learn_trace.csv";
  std::ofstream out = open_output(trace_path);
  out << "epoch,frobenius_error";
  for (int i = 0; i < n; ++i) out << ",eig_" << i;
  out << "\n";
  for (const LearningEpochRecord& record : trace.epochs) {
    out << record.epoch << ',' << format_double(record.frobenius_error);
    for (int i = 0; i < n; ++i) out << ',' << format_double(record.eigenvalues(i));
    out << "\n";
  }
  require_written(out, trace_path);

  const fs::path summary_path = dir / "learn_summary.txt";
  std::ofstream summary = open_output(summary_path);
  summary << "eta=" << format_double(config.learning.eta)
          << " stability_bound=" << format_double(bound)
          << " epochs_logged=" << (trace.epochs.size() - 1)
          << " terminal_error=" << format_double(trace.epochs.back().frobenius_error)
          << " converged=" << (trace.converged ? "yes" : "no") << "\n";
  require_written(summary, summary_path);
}

}  // namespace qwhnet
