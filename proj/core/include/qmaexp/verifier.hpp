// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qmaexp/simulator.hpp"

namespace qmaexp {

/// A verification circuit V_x on witness (x) ancilla qubits.
///
/// Witness qubits are 0..m-1, ancillas m..m+k-1 start in |0>, and the
/// verifier accepts when `output_qubit` reads 1. The circuit's gate count
/// is the resource T used by the clock construction.
struct Verifier {
  QuantumCircuit circuit{1};
  int witness_qubits = 0;
  int ancilla_k = 0;
  int output_qubit = 0;
  double completeness_c = 1.0;
  double soundness_s = 0.0;

  [[nodiscard]] int total_qubits() const { return witness_qubits + ancilla_k; }
  [[nodiscard]] int gate_count() const { return static_cast<int>(circuit.size()); }

  /// ContractError unless 0 <= s < c <= 1, m + k matches the circuit and the output qubit exists.
  void check() const;

  /// {"circuit": {...}, "witness_qubits": m, "ancilla_qubits": k, "output_qubit": o,
  ///  "completeness": c, "soundness": s}
  static Verifier from_json_text(std::string_view text);
  static Verifier from_file(const std::filesystem::path& path);
  [[nodiscard]] std::string to_json_text() const;
};

}  // namespace qmaexp
