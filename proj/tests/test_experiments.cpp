// Copyright (c) 2026 qwhnet developers
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "helpers.hpp"
#include "qwhnet/experiments.hpp"

using namespace qwhnet;
using test_helpers::max_diff;

namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qwhnet_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream stream(line);
  std::string cell;
  while (std::getline(stream, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace

TEST_CASE("unitary_from_phases with all-zero phases is the identity") {
  SplitRng rng(2, DrawSite::kBasisMatrix);
  RMatrix g(6, 6);
  for (int j = 0; j < 6; ++j) {
    for (int i = 0; i < 6; ++i) g(i, j) = rng.gaussian();
  }
  const RMatrix basis = gram_schmidt_orthonormalize(g);
  CHECK(max_diff(unitary_from_phases(basis, RVector::Zero(6)), CMatrix::Identity(6, 6)) <= 1e-10);
}

TEST_CASE("gram_schmidt_orthonormalize yields orthonormal columns") {
  SplitRng rng(9, DrawSite::kBasisMatrix);
  RMatrix g(12, 12);
  for (int j = 0; j < 12; ++j) {
    for (int i = 0; i < 12; ++i) g(i, j) = rng.gaussian();
  }
  const RMatrix q = gram_schmidt_orthonormalize(g);
  CHECK((q.transpose() * q - RMatrix::Identity(12, 12)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("generate_random_case is deterministic and well formed") {
  const RandomCaseSpec spec{16, 77};
  const RandomCase first = generate_random_case(spec);
  const RandomCase second = generate_random_case(spec);
  CHECK(max_diff(first.unitary, second.unitary) == 0.0);
  CHECK(max_diff(first.input, second.input) == 0.0);
  CHECK((first.eigenphases - second.eigenphases).cwiseAbs().maxCoeff() == 0.0);

  CHECK(is_unitary(first.unitary));
  CHECK(first.input.norm() == doctest::Approx(1.0).epsilon(1e-12));

  // exactly half the phases are pinned to zero
  int zeros = 0;
  for (int i = 0; i < 16; ++i) zeros += first.eigenphases(i) == 0.0 ? 1 : 0;
  CHECK(zeros == 8);
  for (int i = 0; i < spec.principal_count(); ++i) CHECK(first.eigenphases(i) > 0.0);

  // the projector matches the retained eigenvector span
  CHECK(max_diff(first.projector * first.projector, first.projector) <= 1e-10);
  CHECK(first.projector.trace().real() == doctest::Approx(8.0).epsilon(1e-10));
}

TEST_CASE("generate_random_case rejects non-power-of-two dimensions") {
  CHECK_THROWS_AS(generate_random_case(RandomCaseSpec{12, 1}), ConfigError);
}

TEST_CASE("a 128-dimensional case pins exactly half the eigenphases to zero") {
  const RandomCase big = generate_random_case(RandomCaseSpec{128, 2});
  int zeros = 0;
  for (int i = 0; i < 128; ++i) zeros += big.eigenphases(i) == 0.0 ? 1 : 0;
  CHECK(zeros == 64);
  CHECK(is_unitary(big.unitary));
}

TEST_CASE("format_double round-trips") {
  for (double value : {0.0, 1.0, -0.25, 1.0 / 3.0, 0.1, 123456.789, 3e-17}) {
    CHECK(std::stod(format_double(value)) == value);
  }
}

TEST_CASE("write_trace_csv emits the pinned schema") {
  const test_helpers::ExactPhaseFixture fixture = test_helpers::make_exact_phase_fixture();
  QpcaPipeline pipeline =
      QpcaPipeline::from_weights(fixture.layout, fixture.weights, fixture.input);
  SplitRng rng(4, DrawSite::kMeasurement);
  const IterationTrace trace = pipeline.run(3, StoppingRule{}, rng);

  std::ostringstream out;
  write_trace_csv(out, trace, fixture.layout);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);

  std::string expected = "iter,p_zero,p_marked,fidelity";
  for (int j = 0; j < 16; ++j) expected += ",phase_p_" + std::to_string(j);
  for (int q = 0; q < 4; ++q) expected += ",h0_q" + std::to_string(q);
  for (int q = 0; q < 4; ++q) expected += ",h0s_q" + std::to_string(q);
  expected += ",a_k,b_k";
  CHECK(header == expected);

  std::string row;
  std::getline(lines, row);
  const std::vector<std::string> cells = split_csv_line(row);
  REQUIRE(cells.size() == 4 + 16 + 4 + 4 + 2);
  CHECK(cells[0] == "0");
  CHECK(std::stod(cells[1]) >= 0.0);
  // exact-phase fixture: recurrence columns populated with a_0 = 1, b_0 = 0
  CHECK(cells[cells.size() - 2] == "1");
  CHECK(cells[cells.size() - 1] == "0");
}

TEST_CASE("write_trace_csv leaves coefficient columns empty without the oracle") {
  const RegisterLayout layout{2, 2};
  // eigenphase 0.3 is not a multiple of 1/4: no recurrence columns
  CMatrix w = CMatrix::Zero(4, 4);
  w(0, 0) = 0.3;
  CVector x = CVector::Zero(4);
  x(0) = 1.0;
  QpcaPipeline pipeline = QpcaPipeline::from_weights(layout, WeightMatrix{w, eig_hermitian(w)}, x);
  CHECK_FALSE(pipeline.has_exact_phases());

  SplitRng rng(4, DrawSite::kMeasurement);
  const IterationTrace trace = pipeline.run(2, StoppingRule{}, rng);
  std::ostringstream out;
  write_trace_csv(out, trace, layout);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);  // header
  std::getline(lines, line);
  const std::vector<std::string> cells = split_csv_line(line);
  CHECK(cells[cells.size() - 2].empty());
  CHECK(cells[cells.size() - 1].empty());
}

TEST_CASE("run_example writes four traces and a comparable summary") {
  RunConfig config;
  config.out_dir = fresh_dir("example");
  run_example(config);

  for (const char* name : {"example_a_exact.csv", "example_a_trotter.csv",
                           "example_b_exact.csv", "example_b_trotter.csv"}) {
    const fs::path path = config.out_dir / name;
    REQUIRE(fs::exists(path));
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);  // header
    int rows = 0;
    double best_fidelity = 0.0;
    while (std::getline(in, line)) {
      const std::vector<std::string> cells = split_csv_line(line);
      const double fidelity = std::stod(cells[3]);
      CHECK(fidelity >= 0.0);
      CHECK(fidelity <= 1.0 + 1e-9);
      best_fidelity = std::max(best_fidelity, fidelity);
      ++rows;
    }
    CHECK(rows == config.max_iterations + 1);
    CHECK(best_fidelity > 0.5);  // amplification visibly improves the overlap
  }
  CHECK(fs::exists(config.out_dir / "example_summary.txt"));
}

TEST_CASE("run_example output is byte-identical across runs") {
  RunConfig config;
  config.out_dir = fresh_dir("example_det_1");
  run_example(config);
  RunConfig again = config;
  again.out_dir = fresh_dir("example_det_2");
  run_example(again);

  for (const char* name : {"example_a_exact.csv", "example_a_trotter.csv",
                           "example_b_exact.csv", "example_b_trotter.csv",
                           "example_summary.txt"}) {
    CHECK(slurp(config.out_dir / name) == slurp(again.out_dir / name));
  }
}

TEST_CASE("run_sweep shares one case across register sizes") {
  RunConfig config;
  config.out_dir = fresh_dir("sweep");
  config.dimension = 16;
  config.seed = 5;
  config.m_list = {1, 3};
  run_sweep(config);

  REQUIRE(fs::exists(config.out_dir / "sweep_m1.csv"));
  REQUIRE(fs::exists(config.out_dir / "sweep_m3.csv"));
  const std::string summary = slurp(config.out_dir / "sweep_summary.txt");
  CHECK(summary.rfind("m,peak_iter,peak_fidelity,stop_iter\n", 0) == 0);

  // m = 1: two-state phase distribution -> exactly two phase_p columns
  std::ifstream in(config.out_dir / "sweep_m1.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header.find("phase_p_1") != std::string::npos);
  CHECK(header.find("phase_p_2") == std::string::npos);
}

TEST_CASE("run_learning_demo follows the closed form and rejects unstable eta") {
  RunConfig config;
  config.out_dir = fresh_dir("learn");
  config.learning.eta = 1.0;
  config.learning.epochs = 50;
  run_learning_demo(config);

  const TrainingSet data = demo_training_set();
  RVector lambdas = eig_hermitian(data.patterns * data.patterns.adjoint()).eigenvalues;
  std::sort(lambdas.begin(), lambdas.end(), std::greater<double>());

  std::ifstream in(config.out_dir / "learn_trace.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "epoch,frobenius_error,eig_0,eig_1,eig_2,eig_3");
  while (std::getline(in, line)) {
    const std::vector<std::string> cells = split_csv_line(line);
    REQUIRE(cells.size() == 6);
    const long epoch = std::stol(cells[0]);
    const RVector expected = eigenvalue_flattening(lambdas, config.learning.eta, epoch);
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(std::stod(cells[static_cast<size_t>(2 + i)]) - expected(i)) <= 1e-8);
    }
  }

  RunConfig unstable = config;
  unstable.learning.eta = 40.0;  // bound for the demo spectrum is 2 / 0.06
  CHECK_THROWS_WITH_AS(run_learning_demo(unstable),
                       doctest::Contains("stability bound"), ConfigError);
}

#ifdef QWHNET_CLI_BIN
TEST_CASE("cli exit codes match the contract") {
  const fs::path dir = fresh_dir("cli_codes");
  const std::string bin = QWHNET_CLI_BIN;

  auto run = [&](const std::string& args) {
    const std::string command = bin + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
  };

  CHECK(run("learn --eta 1 --epochs 5 --out " + (dir / "ok").string()) == 0);
  CHECK(run("learn --eta 999 --out " + (dir / "bad_eta").string()) == 2);
  CHECK(run("random --n 12 --seed 1 --out " + (dir / "bad_n").string()) == 2);
  CHECK(run("bogus-subcommand") == 2);
  CHECK(run("learn --eta 1 --epochs 5 --out /proc/no_such_place/x") == 4);
}

TEST_CASE("cli random run emits a trace whose header matches the layout") {
  const fs::path dir = fresh_dir("cli_random");
  const std::string bin = QWHNET_CLI_BIN;
  const std::string command = bin + " random --n 16 --m 3 --seed 9 --max-iter 5 --out " +
                              dir.string() + " >/dev/null 2>&1";
  REQUIRE(WEXITSTATUS(std::system(command.c_str())) == 0);
  const fs::path trace = dir / "random_n16_m3_seed9.csv";
  REQUIRE(fs::exists(trace));
  std::ifstream in(trace);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("iter,p_zero,p_marked,fidelity,phase_p_0", 0) == 0);
  CHECK(fs::exists(dir / "random_n16_m3_seed9_summary.txt"));
}
#endif

#ifdef QWHNET_GOLDEN_DIR
TEST_CASE("committed example traces stay bit-exact") {
  const fs::path golden = fs::path(QWHNET_GOLDEN_DIR) / "example";
  if (!fs::exists(golden)) {
    MESSAGE("golden directory not populated yet; skipping");
    return;
  }
  RunConfig config;
  config.out_dir = fresh_dir("golden_check");
  run_example(config);
  for (const auto& entry : fs::directory_iterator(golden)) {
    CAPTURE(entry.path().filename().string());
    CHECK(slurp(config.out_dir / entry.path().filename()) == slurp(entry.path()));
  }
}
#endif
