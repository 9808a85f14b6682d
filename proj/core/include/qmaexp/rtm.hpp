// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rtm.hpp
 * @brief Space-bounded reversible Turing machines and their configuration graphs.
 *
 * Machine model: one tape of `space` cells, quintuple transitions
 * (state, read) -> (state', write, move) with move in {L, R, S}. A head move
 * off either end halts the machine without accepting.
 *
 * Configurations are packed into a mixed-radix integer, least significant
 * component first:
 *
 *     index = state + |Q| * (head + S * (tape[0] + |A| * (tape[1] + ... )))
 *
 * so the number of configurations is |Q| * S * |A|^S.
 *
 * The accepting configuration on input x is (accept, head 0, initial tape of x):
 * a machine accepts x only if it restores its tape and parks the head on cell 0.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmaexp/sparse_oracle.hpp"

namespace qmaexp {

enum class Move : int { Left = -1, Stay = 0, Right = 1 };

struct Transition {
  int from_state = 0;
  int read = 0;
  int to_state = 0;
  int write = 0;
  Move move = Move::Stay;
};

struct Configuration {
  int state = 0;
  int head = 0;
  std::vector<int> tape;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

class ReversibleTM {
 public:
  ReversibleTM(std::vector<std::string> states, std::string start, std::string accept,
               std::vector<std::string> alphabet, std::string blank, int space,
               std::vector<Transition> transitions, std::optional<std::string> left_marker = std::nullopt);

  /// Parses the RTM JSON format; throws ParseError on malformed input.
  static ReversibleTM from_json_text(std::string_view text);
  static ReversibleTM from_file(const std::filesystem::path& path);

  [[nodiscard]] const std::vector<std::string>& states() const { return states_; }
  [[nodiscard]] const std::vector<std::string>& alphabet() const { return alphabet_; }
  [[nodiscard]] const std::vector<Transition>& transitions() const { return transitions_; }
  [[nodiscard]] int start_state() const { return start_; }
  [[nodiscard]] int accept_state() const { return accept_; }
  [[nodiscard]] int blank_symbol() const { return blank_; }
  [[nodiscard]] int space() const { return space_; }
  [[nodiscard]] std::optional<int> left_marker() const { return left_marker_; }

  /// |Q| * S * |A|^S; throws ResourceError if it does not fit in 62 bits.
  [[nodiscard]] std::uint64_t config_count() const { return config_count_; }

  [[nodiscard]] std::uint64_t encode(const Configuration& c) const;
  [[nodiscard]] Configuration decode(std::uint64_t index) const;

  /// Initial tape: optional left marker, then the input symbols, then blanks.
  [[nodiscard]] Configuration start_config(std::string_view input) const;
  [[nodiscard]] Configuration accept_config(std::string_view input) const;

  [[nodiscard]] std::optional<Configuration> step(const Configuration& c) const;
  [[nodiscard]] std::optional<std::uint64_t> step_index(std::uint64_t index) const;

  /// Every configuration whose successor is `index`; at most one for a reversible machine.
  [[nodiscard]] std::vector<std::uint64_t> predecessors(std::uint64_t index) const;

  /// Runs from the start configuration until the machine halts.
  [[nodiscard]] std::vector<Configuration> run(std::string_view input) const;

  /// Direct simulation: true iff the run halts in accept_config(input).
  [[nodiscard]] bool accepts(std::string_view input) const;

 private:
  [[nodiscard]] const Transition* lookup(int state, int symbol) const;
  [[nodiscard]] std::vector<int> input_tape(std::string_view input) const;

  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  int start_ = 0;
  int accept_ = 0;
  int blank_ = 0;
  int space_ = 0;
  std::optional<int> left_marker_;
  std::vector<Transition> transitions_;
  std::vector<int> table_;  // (state * |A| + symbol) -> transition index or -1
  std::uint64_t config_count_ = 0;
};

enum class ValidationFailure {
  None,
  NotInjective,           // two configurations share a successor
  StartHasPredecessor,    // some start-state configuration has in-degree 1
  AcceptHasTransition,    // the accept state is not halting
  Cycle,                  // the configuration graph contains a cycle
};

struct ValidationReport {
  ValidationFailure failure = ValidationFailure::None;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;
  std::string message;

  [[nodiscard]] bool ok() const { return failure == ValidationFailure::None; }
};

/// Exhaustive reversibility check over every configuration.
[[nodiscard]] ValidationReport validate(const ReversibleTM& m);

/// Adjacency oracle of the configuration graph with the accept -> start back edge
/// and self-loops on every configuration other than start_config(x) and accept_config(x).
/// Row i lists the out-edges of configuration i. Throws ContractError on an invalid machine.
[[nodiscard]] RowOracleMatrix augmented_adjacency(const ReversibleTM& m, std::string_view input);

struct GappedInstance {
  RowOracleMatrix matrix;      // A^T A of the augmented adjacency
  int gap_exponent = 0;        // g with 2^-g <= gap_lower_bound
  double gap_lower_bound = 0;  // 2(1 - cos(pi / (2 dim + 1)))
};

/// Smallest eigenvalue bound for a nonsingular reduced matrix of the given dimension.
[[nodiscard]] double reduction_gap_bound(std::uint64_t dim);

[[nodiscard]] GappedInstance reduce_to_gapped(const ReversibleTM& m, std::string_view input);

}  // namespace qmaexp
