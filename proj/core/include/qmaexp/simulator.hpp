// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file simulator.hpp
 * @brief Exact statevector simulation, matrix exponentials and one-bit phase estimation.
 *
 * Qubit q of an n-qubit register is bit (n - 1 - q) of the basis index, so
 * qubit 0 is the most significant and `a (x) b` places register a first.
 * All probabilities are computed from amplitudes; nothing is sampled.
 */

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmaexp/sparse_oracle.hpp"
#include "qmaexp/types.hpp"

namespace qmaexp {

inline constexpr int kMaxQubits = 20;

class Statevector {
 public:
  /// |0...0> on n qubits.
  explicit Statevector(int num_qubits);

  /// Requires 2^n amplitudes with unit norm to 1e-10.
  static Statevector from_amplitudes(ComplexVector amplitudes);
  static Statevector basis(int num_qubits, std::uint64_t index);

  [[nodiscard]] int num_qubits() const { return num_qubits_; }
  [[nodiscard]] std::uint64_t dim() const { return static_cast<std::uint64_t>(amps_.size()); }
  [[nodiscard]] const ComplexVector& amplitudes() const { return amps_; }
  [[nodiscard]] double norm_squared() const { return amps_.squaredNorm(); }

  void apply_single(const Eigen::Matrix2cd& u, int qubit);
  void apply_cnot(int control, int target);
  /// Dense 2^k x 2^k unitary on `qubits`; qubits[0] is the most significant index bit of u.
  void apply_dense(const ComplexMatrix& u, std::span<const int> qubits);

  /// Probability that `qubit` measures 1.
  [[nodiscard]] double probability_one(int qubit) const;

  /// this (x) other.
  [[nodiscard]] Statevector tensor(const Statevector& other) const;

 private:
  Statevector(int num_qubits, ComplexVector amplitudes);
  void check_qubit(int q) const;

  int num_qubits_;
  ComplexVector amps_;
};

enum class GateKind { H, X, T, CNOT, Unitary };

struct Gate {
  GateKind kind = GateKind::H;
  std::vector<int> qubits;             // CNOT: {control, target}
  std::optional<ComplexMatrix> matrix;  // GateKind::Unitary only
};

class QuantumCircuit {
 public:
  explicit QuantumCircuit(int num_qubits);

  [[nodiscard]] int num_qubits() const { return num_qubits_; }
  [[nodiscard]] std::size_t size() const { return gates_.size(); }
  [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }

  QuantumCircuit& h(int q);
  QuantumCircuit& x(int q);
  QuantumCircuit& t(int q);
  QuantumCircuit& cnot(int control, int target);
  /// Injected dense unitary; ContractError unless unitary to 1e-10.
  QuantumCircuit& unitary(ComplexMatrix u, std::vector<int> qubits);

  /// Parses {"qubits": n, "gates": [["H",0],["CNOT",0,1],["U",[q..],[[[re,im],..],..]]]}.
  static QuantumCircuit from_json_text(std::string_view text);
  [[nodiscard]] std::string to_json_text() const;

 private:
  void check_qubits(std::span<const int> qubits) const;

  int num_qubits_;
  std::vector<Gate> gates_;
};

/// The 2x2 or 4x4 matrix of a gate (dense matrix for Unitary).
[[nodiscard]] ComplexMatrix gate_matrix(const Gate& g);

[[nodiscard]] Statevector run_circuit(const QuantumCircuit& c, const Statevector& s);

/// Full 2^n x 2^n unitary, assembled entrywise from the gate matrices
/// (independent of the statevector kernels).
[[nodiscard]] ComplexMatrix circuit_unitary(const QuantumCircuit& c);

/// exp(-i A t) by spectral decomposition. ContractError unless Hermitian to 1e-12.
[[nodiscard]] ComplexMatrix expm_exact(const ComplexMatrix& a, double evo_time);
[[nodiscard]] ComplexMatrix expm_exact(const DenseMatrix& a, double evo_time);

/// (x^(K+1) / (K+1)!) e^x with x = ||A|| t: remainder bound of the order-K Taylor sum.
[[nodiscard]] double taylor_tail_bound(double norm_times_time, int order);

/// Smallest K whose tail bound is <= epsilon.
[[nodiscard]] int taylor_order_for(double norm_times_time, double epsilon);

/// sum_{j=0..K} (-i t)^j A^j / j!, applying the oracle rows repeatedly.
/// Requires row_sum_norm(M) * t <= pi.
[[nodiscard]] ComplexMatrix expm_taylor(const RowOracleMatrix& m, double evo_time, int order);

/// Operator-norm truncation error of the order-K Taylor sum for each K in `orders`,
/// evaluated in 50-digit arithmetic against a reference sum whose own
/// remainder is below 1e-60, so the values are not limited by double rounding.
[[nodiscard]] std::vector<double> taylor_truncation_errors(const RowOracleMatrix& m, double evo_time,
                                                           std::span<const int> orders);

/// Outcome-0 probability of H - controlled-U - H on a control qubit prepended to psi.
/// psi may have any dimension equal to U's; ContractError if U is not unitary to 1e-8.
[[nodiscard]] double one_bit_pe(const ComplexMatrix& u, const ComplexVector& psi);
[[nodiscard]] double one_bit_pe(const ComplexMatrix& u, const Statevector& psi);

/// Largest ||U^dagger U - I||, entrywise.
[[nodiscard]] double unitarity_error(const ComplexMatrix& u);

struct Verifier;

/// Probability that the output qubit reads 1 after V on witness (x) |0^k>.
[[nodiscard]] double acceptance_probability(const Verifier& v, const Statevector& witness);

/// Mixed-witness version; linear in rho (2^m x 2^m, Hermitian, trace 1).
[[nodiscard]] double acceptance_probability(const Verifier& v, const ComplexMatrix& rho);

}  // namespace qmaexp
