// Copyright (c) 2026 qwhnet developers
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <iostream>
#include <sstream>
#include <string>

#include "qwhnet/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDegenerateInput = 3;
constexpr int kExitIo = 4;

void add_common_options(CLI::App* cmd, qwhnet::RunConfig& config, std::string& evolution) {
  cmd->add_option("--evolution", evolution, "evolution operator construction: exact|trotter")
      ->check(CLI::IsMember({"exact", "trotter"}))
      ->capture_default_str();
  cmd->add_option("--trotter-steps", config.trotter_steps, "time slices for the splitting")
      ->capture_default_str();
  cmd->add_option("--max-iter", config.max_iterations, "amplification iterations to record")
      ->capture_default_str();
  cmd->add_option("--out", config.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--shots", config.stop.shots, "measurements per qubit for the stopping rule")
      ->capture_default_str();
  cmd->add_option("--stop-tol", config.stop.tolerance,
                  "stopping rule fires when every sampled qubit estimate reaches 1 - tol")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-register simulator: principal-component retrieval from "
               "Widrow-Hoff-trained autoassociators"};
  app.require_subcommand(1);

  qwhnet::RunConfig config;
  std::string evolution = "exact";
  std::string m_list_text = "1,2,3,4,5,6";

  CLI::App* example = app.add_subcommand(
      "example", "run the bundled 4x2 demo patterns with both probe inputs, exact and trotter");
  add_common_options(example, config, evolution);

  CLI::App* random = app.add_subcommand("random", "run one random case");
  random->add_option("--n", config.dimension, "data dimension (power of two)")
      ->capture_default_str();
  random->add_option("--m", config.phase_qubits, "phase register qubits")->capture_default_str();
  random->add_option("--seed", config.seed, "random seed")->capture_default_str();
  add_common_options(random, config, evolution);

  CLI::App* sweep = app.add_subcommand("sweep", "run one random case across phase register sizes");
  sweep->add_option("--n", config.dimension, "data dimension (power of two)")
      ->capture_default_str();
  sweep->add_option("--m-list", m_list_text, "comma separated phase register sizes")
      ->capture_default_str();
  sweep->add_option("--seed", config.seed, "random seed")->capture_default_str();
  add_common_options(sweep, config, evolution);

  CLI::App* learn = app.add_subcommand("learn", "learning-rule convergence on the demo patterns");
  learn->add_option("--eta", config.learning.eta, "learning constant")->capture_default_str();
  learn->add_option("--epochs", config.learning.epochs, "epoch cap")->capture_default_str();
  add_common_options(learn, config, evolution);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  config.evolution = evolution == "trotter" ? qwhnet::EvolutionKind::kTrotter
                                            : qwhnet::EvolutionKind::kExact;

  try {
    if (sweep->parsed()) {
      config.m_list.clear();
      std::stringstream stream(m_list_text);
      std::string token;
      while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        config.m_list.push_back(std::stoi(token));
      }
    }

    if (example->parsed()) {
      qwhnet::run_example(config);
    } else if (random->parsed()) {
      qwhnet::run_random(config);
    } else if (sweep->parsed()) {
      qwhnet::run_sweep(config);
    } else if (learn->parsed()) {
      qwhnet::run_learning_demo(config);
    }
  } catch (const qwhnet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qwhnet::DegenerateInputError& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kExitDegenerateInput;
  } catch (const qwhnet::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
