// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qmaexp::tools {

struct ExperimentConfig {
  std::string command;  // spectrum | det | reduce | verify | amplify | kitaev | energy

  // spectrum
  std::string kind = "path";  // path | cycle
  std::uint64_t ell = 8;
  bool printed_angle = false;

  // instances
  std::optional<std::string> instance;  // matrix or Hamiltonian JSON
  std::optional<std::string> machine;
  std::string input;
  std::optional<int> space;
  std::optional<std::string> verifier;

  // det on a seeded random matrix when no instance is given
  int dim = 6;
  std::uint64_t seed = 1;

  std::optional<int> gap_exponent;  // overrides the instance's g for verify
  int trials_r = 3;
  std::optional<int> precision_bits;
  std::optional<std::uint64_t> witness;  // basis witness for amplify
  int bits = 30;
  std::optional<std::string> emit;  // kitaev: write the instance JSON here

  std::string format = "csv";  // csv | json
  std::optional<std::string> output;
};

using Cell = std::variant<std::int64_t, double, std::string>;

struct Report {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  int exit_code = 0;
  std::string diagnostic;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPromiseViolation = 3;

/// Runs one command. Library exceptions propagate except promise violations,
/// which come back as a report with kExitPromiseViolation.
[[nodiscard]] Report run_experiment(const ExperimentConfig& cfg);

/// CSV with a header row, or {"command", "columns", "rows": [{...}]}.
/// Doubles use 17 significant digits in both formats.
[[nodiscard]] std::string emit_report(const Report& report, const std::string& format);

/// Writes emit_report output to cfg.output, or stdout when unset.
void write_report(const Report& report, const ExperimentConfig& cfg);

}  // namespace qmaexp::tools
