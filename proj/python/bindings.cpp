// Copyright (c) 2026 qwhnet developers
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qwhnet/experiments.hpp"

namespace py = pybind11;
using namespace qwhnet;

namespace {

int data_qubits_for(Eigen::Index dim) {
  int bits = 0;
  while ((1LL << bits) < dim) ++bits;
  if ((1LL << bits) != dim) {
    throw std::invalid_argument("data dimension must be a power of two");
  }
  return bits;
}

RMatrix stack_columns(const IterationTrace& trace,
                      const std::function<const RVector&(const IterationRecord&)>& pick) {
  if (trace.records.empty()) return RMatrix(0, 0);
  RMatrix out(trace.records.size(), pick(trace.records.front()).size());
  for (size_t k = 0; k < trace.records.size(); ++k) {
    out.row(static_cast<Eigen::Index>(k)) = pick(trace.records[k]).transpose();
  }
  return out;
}

RVector scalar_column(const IterationTrace& trace,
                      const std::function<double(const IterationRecord&)>& pick) {
  RVector out(trace.records.size());
  for (size_t k = 0; k < trace.records.size(); ++k) {
    out(static_cast<Eigen::Index>(k)) = pick(trace.records[k]);
  }
  return out;
}

IterationTrace run_from_weights(const CMatrix& weights, const CVector& input, int phase_qubits,
                                int max_iterations, int shots, double stop_tolerance,
                                std::uint64_t seed) {
  const RegisterLayout layout{phase_qubits, data_qubits_for(weights.rows())};
  const CMatrix sym = 0.5 * (weights + weights.adjoint());
  QpcaPipeline pipeline =
      QpcaPipeline::from_weights(layout, WeightMatrix{sym, eig_hermitian(sym)}, input);
  SplitRng rng(seed, DrawSite::kMeasurement);
  return pipeline.run(max_iterations, StoppingRule{shots, stop_tolerance}, rng);
}

IterationTrace run_from_patterns(const CMatrix& patterns, const CVector& input, int phase_qubits,
                                 int trotter_steps, int max_iterations, int shots,
                                 double stop_tolerance, std::uint64_t seed) {
  const RegisterLayout layout{phase_qubits, data_qubits_for(patterns.rows())};
  QpcaPipeline pipeline = QpcaPipeline::from_training_set(layout, TrainingSet{patterns}, input,
                                                          trotter_steps);
  SplitRng rng(seed, DrawSite::kMeasurement);
  return pipeline.run(max_iterations, StoppingRule{shots, stop_tolerance}, rng);
}

IterationTrace run_from_unitary(const CMatrix& unitary, const CMatrix& projector,
                                const CVector& input, int phase_qubits,
                                std::optional<RVector> eigenphases, int max_iterations, int shots,
                                double stop_tolerance, std::uint64_t seed) {
  const RegisterLayout layout{phase_qubits, data_qubits_for(unitary.rows())};
  QpcaPipeline pipeline(layout, power_cache(unitary, phase_qubits), projector, input);
  if (eigenphases) pipeline.set_eigenphases(*eigenphases);
  SplitRng rng(seed, DrawSite::kMeasurement);
  return pipeline.run(max_iterations, StoppingRule{shots, stop_tolerance}, rng);
}

CMatrix strang_product_py(const std::vector<CVector>& columns, double time, int steps) {
  TrotterPlan plan;
  plan.columns = columns;
  plan.time = time;
  plan.steps = steps;
  return strang_product(plan);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "two-register statevector simulator for principal-component retrieval "
            "from Widrow-Hoff-trained linear autoassociators";

  py::register_exception<DegenerateInputError>(m, "DegenerateInputError");

  m.def("householder_unitary", &householder_unitary, py::arg("x"),
        "unitary completion of a unit vector; the first column equals x");
  m.def(
      "eig_hermitian",
      [](const CMatrix& a) {
        const SpectralDecomposition s = eig_hermitian(a);
        return py::make_tuple(s.eigenvalues, s.eigenvectors);
      },
      py::arg("a"), "Hermitian eigendecomposition -> (eigenvalues, eigenvectors)");
  m.def(
      "svd_small",
      [](const CMatrix& x) {
        const SingularValueDecomposition s = svd_small(x);
        return py::make_tuple(s.left, s.singular_values, s.right);
      },
      py::arg("x"), "thin SVD -> (left, singular_values, right)");
  m.def("unitary_exponential", &unitary_exponential, py::arg("w"), py::arg("t"),
        "exp(i 2 pi w t) for Hermitian w");
  m.def("rank_one_exponential", &rank_one_exponential, py::arg("x"), py::arg("t"),
        "exp(i 2 pi t x x^H) via Householder conjugation");
  m.def("strang_product", &strang_product_py, py::arg("columns"), py::arg("time") = 1.0,
        py::arg("steps") = 1, "symmetric splitting product over rank-one terms");

  m.def(
      "widrow_hoff_step",
      [](const CMatrix& w_prev, const CMatrix& patterns, double eta) {
        return widrow_hoff_step(w_prev, TrainingSet{patterns}, eta);
      },
      py::arg("w_prev"), py::arg("patterns"), py::arg("eta"));
  m.def("eigenvalue_flattening", &eigenvalue_flattening, py::arg("eigenvalues"), py::arg("eta"),
        py::arg("epoch"));
  m.def(
      "limit_weights",
      [](const CMatrix& patterns) { return limit_weights(TrainingSet{patterns}); },
      py::arg("patterns"), "limit projector of the learning iteration");
  m.def(
      "network_output",
      [](const CMatrix& patterns, const CVector& input) {
        const NetworkOutput out = network_output(TrainingSet{patterns}, input);
        return py::make_tuple(out.output, out.success_probability);
      },
      py::arg("patterns"), py::arg("input"),
      "trained-network response -> (projection, success_probability)");

  m.def(
      "demo_patterns", [] { return demo_training_set().patterns; },
      "the bundled 4x2 demo pattern matrix");
  m.def("demo_inputs", &demo_inputs, "the two bundled probe inputs");

  py::class_<RandomCase>(m, "RandomCase")
      .def_readonly("unitary", &RandomCase::unitary)
      .def_readonly("projector", &RandomCase::projector)
      .def_readonly("eigenphases", &RandomCase::eigenphases)
      .def_readonly("basis", &RandomCase::basis)
      .def_readonly("input", &RandomCase::input);
  m.def(
      "generate_random_case",
      [](int dimension, std::uint64_t seed) {
        return generate_random_case(RandomCaseSpec{dimension, seed});
      },
      py::arg("dimension") = 128, py::arg("seed") = 1);

  py::class_<IterationTrace>(m, "IterationTrace")
      .def_property_readonly("iterations",
                             [](const IterationTrace& t) {
                               std::vector<int> out;
                               for (const auto& r : t.records) out.push_back(r.iteration);
                               return out;
                             })
      .def_property_readonly("p_zero",
                             [](const IterationTrace& t) {
                               return scalar_column(t, [](const IterationRecord& r) {
                                 return r.p_zero;
                               });
                             })
      .def_property_readonly("p_marked",
                             [](const IterationTrace& t) {
                               return scalar_column(t, [](const IterationRecord& r) {
                                 return r.p_marked;
                               });
                             })
      .def_property_readonly("fidelity",
                             [](const IterationTrace& t) {
                               return scalar_column(t, [](const IterationRecord& r) {
                                 return r.fidelity;
                               });
                             })
      .def_property_readonly("phase_probabilities",
                             [](const IterationTrace& t) {
                               return stack_columns(t, [](const IterationRecord& r) -> const RVector& {
                                 return r.phase_probabilities;
                               });
                             })
      .def_property_readonly("hadamard_exact",
                             [](const IterationTrace& t) {
                               return stack_columns(t, [](const IterationRecord& r) -> const RVector& {
                                 return r.hadamard_exact;
                               });
                             })
      .def_property_readonly("hadamard_sampled",
                             [](const IterationTrace& t) {
                               return stack_columns(t, [](const IterationRecord& r) -> const RVector& {
                                 return r.hadamard_sampled;
                               });
                             })
      .def_property_readonly("coefficients",
                             [](const IterationTrace& t) -> py::object {
                               if (t.records.empty() || !t.records.front().a) return py::none();
                               RMatrix out(t.records.size(), 2);
                               for (size_t k = 0; k < t.records.size(); ++k) {
                                 out(static_cast<Eigen::Index>(k), 0) = *t.records[k].a;
                                 out(static_cast<Eigen::Index>(k), 1) = *t.records[k].b;
                               }
                               return py::cast(out);
                             })
      .def_readonly("initial_success_probability",
                    &IterationTrace::initial_success_probability)
      .def_readonly("stop_iteration", &IterationTrace::stop_iteration)
      .def_readonly("stop_fidelity", &IterationTrace::stop_fidelity)
      .def_readonly("peak_iteration", &IterationTrace::peak_iteration)
      .def_readonly("peak_fidelity", &IterationTrace::peak_fidelity)
      .def_readonly("min_p_zero_iteration", &IterationTrace::min_p_zero_iteration);

  m.def("run_qpca", &run_from_weights, py::arg("weights"), py::arg("input"),
        py::arg("phase_qubits") = 6, py::arg("max_iterations") = 30, py::arg("shots") = 10,
        py::arg("stop_tolerance") = 0.05, py::arg("seed") = 1,
        "phase estimation + amplification over exp(i 2 pi W) for a Hermitian weight matrix");
  m.def("run_qpca_trotter", &run_from_patterns, py::arg("patterns"), py::arg("input"),
        py::arg("phase_qubits") = 6, py::arg("trotter_steps") = 1, py::arg("max_iterations") = 30,
        py::arg("shots") = 10, py::arg("stop_tolerance") = 0.05, py::arg("seed") = 1,
        "same pipeline with the evolution operator built by symmetric splitting");
  m.def("run_qpca_unitary", &run_from_unitary, py::arg("unitary"), py::arg("projector"),
        py::arg("input"), py::arg("phase_qubits") = 6, py::arg("eigenphases") = py::none(),
        py::arg("max_iterations") = 30, py::arg("shots") = 10, py::arg("stop_tolerance") = 0.05,
        py::arg("seed") = 1, "pipeline over a caller-supplied evolution unitary");
}
