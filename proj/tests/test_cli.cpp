// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "experiment.hpp"
#include "qmaexp/instance_io.hpp"
#include "qmaexp/protocols.hpp"
#include "qmaexp/rtm.hpp"
#include "qmaexp/spectral.hpp"
#include "test_support.hpp"

namespace qmaexp {
namespace {

namespace fs = std::filesystem;

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(QMAEXP_CLI_BINARY) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string machine(const std::string& name) { return testing::machine_path(name).string(); }
std::string verifier(const std::string& name) { return testing::verifier_path(name).string(); }

TEST(Cli, SpectrumPathEight) {
  const auto r = run_cli("spectrum --kind path --ell 8");
  ASSERT_EQ(r.exit_code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 9U);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"ell", "k", "closed_form", "eigensolver", "abs_err"}));
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(std::stod(rows[i][4]), 1e-9);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli("").exit_code, 2);
  EXPECT_EQ(run_cli("frobnicate").exit_code, 2);
  EXPECT_EQ(run_cli("spectrum --kind tree").exit_code, 2);
  EXPECT_EQ(run_cli("energy --bits 41 --instance " + verifier("amp_yes")).exit_code, 2);
  EXPECT_EQ(run_cli("reduce --machine /nonexistent.json").exit_code, 2);
}

TEST(Cli, LibraryErrorsExitOne) {
  EXPECT_EQ(run_cli("verify --g 13 --input 0 --machine " + machine("first_bit")).exit_code, 1);
  EXPECT_EQ(run_cli("reduce --machine " + machine("invalid/looping")).exit_code, 1);
}

TEST(Cli, PromiseViolationExitsThree) {
  const fs::path dir = fs::temp_directory_path() / "qmaexp_cli_test";
  fs::create_directories(dir);
  // Ancilla in |+>: every witness accepts with probability 1/2.
  std::ofstream(dir / "half.json")
      << R"({"circuit":{"qubits":2,"gates":[["H",1]]},"witness_qubits":1,"ancilla_qubits":1,)"
      << R"("output_qubit":1,"completeness":0.9,"soundness":0.1})";
  const auto r = run_cli("amplify --witness 0 --verifier " + (dir / "half.json").string());
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.out.find("PROMISE_VIOLATED"), std::string::npos);
}

TEST(Cli, RerunsAreByteIdentical) {
  const std::vector<std::string> runs{"spectrum --ell 12", "det --dim 6 --seed 9",
                                      "amplify --verifier " + verifier("amp_yes"),
                                      "reduce --input 11 --machine " + machine("both_ones")};
  for (const auto& args : runs) {
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    EXPECT_EQ(a.exit_code, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, JsonRoundTripsAtFullPrecision) {
  const auto r = run_cli("--format json spectrum --ell 16");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "spectrum");
  const auto closed = closed_form_eigenvalues(16);
  ASSERT_EQ(j["rows"].size(), closed.size());
  for (std::size_t k = 0; k < closed.size(); ++k) {
    EXPECT_EQ(j["rows"][k]["closed_form"].get<double>(), closed[k]);  // 17 digits: exact
  }
}

TEST(Cli, OutputFileAndConfig) {
  const fs::path dir = fs::temp_directory_path() / "qmaexp_cli_test";
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.toml";
  std::ofstream(cfg) << "format = \"json\"\n[spectrum]\nkind = \"cycle\"\nell = 5\n";
  const fs::path out = dir / "out.json";
  fs::remove(out);
  ASSERT_EQ(run_cli("--config " + cfg.string() + " -o " + out.string() + " spectrum").exit_code, 0);
  std::ifstream in(out);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["rows"].size(), 5U);
  EXPECT_EQ(j["rows"][0]["ell"], 5);
}

TEST(Cli, ValuesMatchLibrary) {
  tools::ExperimentConfig cfg;
  cfg.command = "verify";
  cfg.machine = machine("both_ones");
  cfg.input = "10";
  const auto report = tools::run_experiment(cfg);
  ASSERT_EQ(report.rows.size(), 1U);
  const auto m = load_machine(machine("both_ones"));
  const auto g = reduce_to_gapped(m, "10");
  const auto d = decide_gapped(g.matrix, g.gap_exponent);
  const auto& row = report.rows[0];
  auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(report.columns.begin(), report.columns.end(), name) -
                                    report.columns.begin());
  };
  EXPECT_EQ(std::get<std::string>(row[col("decision")]), to_string(d.decision));
  EXPECT_EQ(std::get<double>(row[col("best_acceptance")]), d.best_acceptance);
  EXPECT_EQ(std::get<double>(row[col("separation")]), d.separation);
  EXPECT_EQ(std::get<std::int64_t>(row[col("g")]), g.gap_exponent);

  // The CSV printed by the binary carries the same doubles.
  const auto csv = parse_csv(run_cli("verify --input 10 --machine " + machine("both_ones")).out);
  ASSERT_EQ(csv.size(), 2U);
  EXPECT_EQ(std::stod(csv[1][col("best_acceptance")]), d.best_acceptance);
  EXPECT_EQ(csv[1][col("decision")], to_string(d.decision));
}

TEST(Cli, DetAgreesOnBothRoutes) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    tools::ExperimentConfig cfg;
    cfg.command = "det";
    cfg.dim = 7;
    cfg.seed = seed;
    const auto rep = tools::run_experiment(cfg);
    ASSERT_EQ(rep.rows.size(), 1U);
    EXPECT_EQ(std::get<std::int64_t>(rep.rows[0][2]), std::get<std::int64_t>(rep.rows[0][3]));
  }
}

TEST(Cli, KitaevEmitFeedsEnergy) {
  const fs::path dir = fs::temp_directory_path() / "qmaexp_cli_test";
  fs::create_directories(dir);
  const fs::path inst = dir / "amp_yes_clock.json";
  ASSERT_EQ(run_cli("kitaev --emit " + inst.string() + " --verifier " + verifier("amp_yes")).exit_code, 0);
  const auto rows = parse_csv(run_cli("energy --bits 20 --instance " + inst.string()).out);
  ASSERT_GE(rows.size(), 2U);
  const double lo = std::stod(rows.back()[1]);
  const double hi = std::stod(rows.back()[2]);
  const auto h = kitaev_hamiltonian(Verifier::from_file(testing::verifier_path("amp_yes")));
  const double truth = min_eigenvalue(materialize_hamiltonian(h));
  EXPECT_LE(hi - lo, std::ldexp(1.0, -20));
  EXPECT_LE(lo, truth + 1e-12);
  EXPECT_GE(hi, truth - 1e-12);
}

}  // namespace
}  // namespace qmaexp
