// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file protocols.hpp
 * @brief Verification protocols built on the simulator: accept operators, the
 * mixed-witness reduction, reflection-based in-place amplification, the
 * one-bit phase-estimation verifier for gapped sparse matrices, and the
 * clock-Hamiltonian construction with ground-energy bisection.
 */

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmaexp/simulator.hpp"
#include "qmaexp/sparse_oracle.hpp"
#include "qmaexp/spectral.hpp"
#include "qmaexp/verifier.hpp"

namespace qmaexp {

// ---------------------------------------------------------------------------
// Accept operators and the mixed witness
// ---------------------------------------------------------------------------

/// Q = (I (x) <0^k|) V^dagger |1><1|_out V (I (x) |0^k>) on the 2^m witness space.
struct AcceptOperator {
  int witness_qubits = 0;
  ComplexMatrix matrix;
};

/// Dense Q_x from the assembled circuit unitary.
[[nodiscard]] AcceptOperator accept_operator(const Verifier& v);

/// 2^-m tr(Q_x): acceptance probability on the maximally mixed witness.
[[nodiscard]] double mixed_witness_acceptance(const Verifier& v);
[[nodiscard]] double mixed_witness_acceptance(const AcceptOperator& q);

struct Reflections {
  ComplexMatrix r0;  // 2 (I_m (x) |0^k><0^k|) - I
  ComplexMatrix r1;  // 2 V^dagger |1><1|_out V - I
};

[[nodiscard]] Reflections reflections(const Verifier& v);

/// Eigen-angles of R1 R0 in (-pi, pi], ascending.
[[nodiscard]] std::vector<double> rotation_angles(const Reflections& r);

// ---------------------------------------------------------------------------
// In-place amplification by repeated phase estimation of R1 R0
// ---------------------------------------------------------------------------

struct AmplificationParams {
  int trials_r = 1;
  int precision_bits = 1;
  double phi_c = 0;  // arccos(sqrt(c)) / pi
  double phi_s = 0;  // arccos(sqrt(s)) / pi

  /// Picks the smallest precision with 2^-precision < (phi_s - phi_c) / 4 unless given.
  static AmplificationParams make(double c, double s, int trials_r, std::optional<int> precision_bits = std::nullopt);

  /// Phase-estimation register size: two bits beyond the requested precision.
  [[nodiscard]] int register_qubits() const { return precision_bits + 2; }
  /// Accepted slack between a reading and the thresholds: 2^-precision_bits.
  [[nodiscard]] double tolerance() const;
  void check() const;
};

enum class Decision { Yes, No, PromiseViolated };

[[nodiscard]] std::string to_string(Decision d);

struct AmplificationResult {
  Decision decision = Decision::PromiseViolated;  // most likely outcome
  double probability = 0;                         // probability of `decision`
  double p_yes = 0;
  double p_no = 0;
  double p_violation = 0;
};

/// Exact outcome distribution of r sequential phase-estimation trials on
/// witness (x) |0^k>, with the register simulated explicitly. A trial reading
/// folds to min(y, 1 - y); the median reading decides YES (<= phi_c + tol),
/// NO (>= phi_s - tol), or a promise violation in between.
[[nodiscard]] AmplificationResult nwz_amplify(const Verifier& v, const AmplificationParams& params,
                                              const Statevector& witness);

/// POVM element of the YES decision restricted to witness (x) |0^k>: the accept
/// operator of the amplified verifier.
[[nodiscard]] AcceptOperator amplified_accept_operator(const Verifier& v, const AmplificationParams& params);

// ---------------------------------------------------------------------------
// One-bit phase estimation verifier for gapped PSD sparse matrices
// ---------------------------------------------------------------------------

inline constexpr int kMaxGapExponent = 12;

struct GappedVerifierConfig {
  int gap_exponent = 0;
  double evo_time = 0;     // pi / (entry_bound * sparsity)
  double epsilon = 0;      // 2^-2g t^2 / 16
  int taylor_order = 0;    // smallest K with tail bound(pi, K) <= epsilon
  double completeness_bound = 0;  // 1 - epsilon
  double soundness_bound = 0;     // 1 - 2^-2g t^2/4 + epsilon + 2^-4g t^4/48
};

/// ConfigurationError when g exceeds kMaxGapExponent.
[[nodiscard]] GappedVerifierConfig gapped_config(const RowOracleMatrix& m, int g);

class GappedVerifier {
 public:
  /// Requires a symmetric matrix within the dense cap.
  GappedVerifier(const RowOracleMatrix& m, int g);

  [[nodiscard]] const GappedVerifierConfig& config() const { return config_; }
  [[nodiscard]] const ComplexMatrix& evolution() const { return evolution_; }

  /// Exact outcome-0 probability for the witness.
  [[nodiscard]] double acceptance(const ComplexVector& witness) const;

  /// Largest acceptance over all witnesses, with its maximizer.
  [[nodiscard]] std::pair<double, ComplexVector> best_acceptance() const;

 private:
  GappedVerifierConfig config_;
  ComplexMatrix evolution_;
};

[[nodiscard]] double gapped_verifier(const RowOracleMatrix& m, int g, const ComplexVector& witness);

struct GappedDecision {
  Decision decision = Decision::No;
  GappedVerifierConfig config;
  double lambda_min = 0;
  double best_acceptance = 0;
  double midpoint = 0;
  /// YES: best - soundness_bound; NO: completeness_bound - best.
  double separation = 0;
};

/// Honest-prover driver: the best witness is the top eigenvector of the
/// acceptance operator (I + U)^dagger (I + U) / 4.
[[nodiscard]] GappedDecision decide_gapped(const RowOracleMatrix& m, int g);

// ---------------------------------------------------------------------------
// Precise local Hamiltonians
// ---------------------------------------------------------------------------

struct LocalTerm {
  std::string label;
  std::vector<int> qubits;
  ComplexMatrix matrix;  // 2^|qubits| square, qubits[0] most significant
};

struct PreciseLHInstance {
  int num_qubits = 0;
  std::vector<LocalTerm> terms;
  double threshold_a = 0;
  double threshold_b = 0;
  int locality = 0;
};

/// Largest circuit handled by the clock construction.
inline constexpr int kMaxClockGates = 6;
inline constexpr int kMaxClockCircuitQubits = 4;

/// Five-local clock Hamiltonian H_in + H_out + H_clock + H_prop with a unary
/// clock of T qubits appended after the circuit qubits; a = (1-c)/(T+1), b = (1-s)/T^3.
[[nodiscard]] PreciseLHInstance kitaev_hamiltonian(const Verifier& v);

[[nodiscard]] ComplexMatrix materialize_hamiltonian(const PreciseLHInstance& h);

struct PreciseLHBounds {
  double a = 0;
  double b = 0;
  bool gap_ok = false;
};

/// With 1 - c = epsilon and 1 - s = 2^-g' - epsilon: a = epsilon/(T+1), b = (2^-g' - epsilon)/T^3.
[[nodiscard]] PreciseLHBounds precise_lh_bounds(int gate_count_t, double epsilon, int g_prime);
/// Same, with T taken from the verifier's gate count.
[[nodiscard]] PreciseLHBounds precise_lh_bounds(const Verifier& v, double epsilon, int g_prime);

/// epsilon = 2^-g' / (2 (T^2 + 1)), which satisfies epsilon (T^2 + 1) < 2^-g'.
[[nodiscard]] double epsilon_rule(int gate_count_t, int g_prime);

struct EnergySearch {
  double lower = 0;
  double upper = 0;
  double estimate = 0;  // bracket midpoint
  std::vector<std::pair<double, double>> brackets;
};

/// Bisection on the decision "lambda_min <= mu", answered by a Sturm count on
/// the tridiagonal form, until the bracket is at most 2^-bits wide.
[[nodiscard]] EnergySearch binary_search_energy(const ComplexMatrix& h, int bits);
[[nodiscard]] EnergySearch binary_search_energy(const DenseMatrix& h, int bits);
[[nodiscard]] EnergySearch binary_search_energy(const PreciseLHInstance& h, int bits);

}  // namespace qmaexp
