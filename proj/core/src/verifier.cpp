// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmaexp/verifier.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qmaexp/errors.hpp"

namespace qmaexp {

void Verifier::check() const {
  if (witness_qubits < 1) throw ContractError("verifier: needs at least one witness qubit");
  if (ancilla_k < 0) throw ContractError("verifier: negative ancilla count");
  if (circuit.num_qubits() != total_qubits()) throw ContractError("verifier: circuit width != m + k");
  if (output_qubit < 0 || output_qubit >= total_qubits()) throw ContractError("verifier: output qubit out of range");
  if (!(soundness_s >= 0.0 && soundness_s < completeness_c && completeness_c <= 1.0)) {
    throw ContractError("verifier: requires 0 <= s < c <= 1");
  }
}

Verifier Verifier::from_json_text(std::string_view text) {
  Verifier v;
  try {
    const auto j = nlohmann::json::parse(text);
    v.circuit = QuantumCircuit::from_json_text(j.at("circuit").dump());
    v.witness_qubits = j.at("witness_qubits").get<int>();
    v.ancilla_k = j.value("ancilla_qubits", 0);
    v.output_qubit = j.at("output_qubit").get<int>();
    v.completeness_c = j.at("completeness").get<double>();
    v.soundness_s = j.at("soundness").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("verifier JSON: ") + e.what());
  }
  v.check();
  return v;
}

Verifier Verifier::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open verifier file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string Verifier::to_json_text() const {
  nlohmann::json j;
  j["circuit"] = nlohmann::json::parse(circuit.to_json_text());
  j["witness_qubits"] = witness_qubits;
  j["ancilla_qubits"] = ancilla_k;
  j["output_qubit"] = output_qubit;
  j["completeness"] = completeness_c;
  j["soundness"] = soundness_s;
  return j.dump(2);
}

}  // namespace qmaexp
