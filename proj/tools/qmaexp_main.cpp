// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

// Batch experiment driver. Flags override values from --config, which
// override the defaults in ExperimentConfig.

#include <iostream>

#include <CLI11.hpp>

#include "experiment.hpp"
#include "qmaexp/errors.hpp"

namespace {

using qmaexp::tools::ExperimentConfig;

void add_instance(CLI::App* sub, ExperimentConfig& cfg) {
  sub->add_option("--instance", cfg.instance, "instance JSON file")->check(CLI::ExistingFile);
}

void add_machine(CLI::App* sub, ExperimentConfig& cfg) {
  sub->add_option("--machine", cfg.machine, "machine JSON file")->check(CLI::ExistingFile);
  sub->add_option("--input", cfg.input, "input string");
  sub->add_option("--space", cfg.space, "override the machine's space bound")->check(CLI::PositiveNumber);
}

void add_verifier(CLI::App* sub, ExperimentConfig& cfg) {
  sub->add_option("--verifier", cfg.verifier, "verifier JSON file")->check(CLI::ExistingFile);
}

}  // namespace

int main(int argc, char** argv) {
  ExperimentConfig cfg;
  CLI::App app{"qmaexp: desk-scale experiments on sparse-matrix verification protocols"};
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.require_subcommand(1);
  app.add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-o,--output", cfg.output, "report path (stdout when omitted)");

  auto* spectrum = app.add_subcommand("spectrum", "closed-form vs eigensolver spectrum of a structured block");
  spectrum->add_option("--kind", cfg.kind, "block family")->check(CLI::IsMember({"path", "cycle"}));
  spectrum->add_option("--ell", cfg.ell, "block size")->check(CLI::PositiveNumber);
  spectrum->add_flag("--printed-angle", cfg.printed_angle, "use the 2k angle convention as printed");

  auto* det = app.add_subcommand("det", "exact determinant of an instance or a seeded random matrix");
  add_instance(det, cfg);
  det->add_option("--dim", cfg.dim, "random matrix size")->check(CLI::PositiveNumber);
  det->add_option("--seed", cfg.seed, "random seed");

  auto* reduce = app.add_subcommand("reduce", "machine -> augmented adjacency -> gapped Gram matrix");
  add_machine(reduce, cfg);

  auto* verify = app.add_subcommand("verify", "one-bit phase-estimation verifier on a gapped matrix");
  add_instance(verify, cfg);
  add_machine(verify, cfg);
  verify->add_option("--g", cfg.gap_exponent, "gap exponent override");

  auto* amplify = app.add_subcommand("amplify", "exact outcome distribution of in-place amplification");
  add_verifier(amplify, cfg);
  amplify->add_option("-r,--trials", cfg.trials_r, "phase-estimation rounds")->check(CLI::PositiveNumber);
  amplify->add_option("--precision-bits", cfg.precision_bits, "phase precision (default: smallest sufficient)");
  amplify->add_option("--witness", cfg.witness, "basis witness index (default: all, plus the optimum)");

  auto* kitaev = app.add_subcommand("kitaev", "clock Hamiltonian of a verifier");
  add_verifier(kitaev, cfg);
  kitaev->add_option("--emit", cfg.emit, "write the instance JSON here");

  auto* energy = app.add_subcommand("energy", "bisection for the ground energy");
  add_verifier(energy, cfg);
  add_instance(energy, cfg);
  energy->add_option("--bits", cfg.bits, "bracket width 2^-bits")->check(CLI::Range(1, 40));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qmaexp::tools::kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    const auto report = qmaexp::tools::run_experiment(cfg);
    if (report.exit_code == qmaexp::tools::kExitPromiseViolation && report.rows.empty()) {
      std::cerr << "promise violated: " << report.diagnostic << '\n';
      return report.exit_code;
    }
    qmaexp::tools::write_report(report, cfg);
    if (!report.diagnostic.empty()) std::cerr << report.diagnostic << '\n';
    return report.exit_code;
  } catch (const qmaexp::PromiseViolation& e) {
    std::cerr << "promise violated: " << e.what() << '\n';
    return qmaexp::tools::kExitPromiseViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qmaexp::tools::kExitFailure;
  }
}
