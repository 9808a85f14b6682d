// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qmaexp/errors.hpp"
#include "qmaexp/protocols.hpp"
#include "qmaexp/simulator.hpp"
#include "qmaexp/spectral.hpp"
#include "test_support.hpp"

namespace qmaexp {
namespace {

constexpr double kPi = std::numbers::pi;

DenseMatrix path_gram(std::uint64_t ell) {
  return DenseMatrix{structured_matrix(BlockKind::Path, ell).matrix.cast<double>(), true, false};
}

double op_norm(const ComplexMatrix& m) { return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()(0); }

TEST(Statevector, BasicGates) {
  const auto one = run_circuit(QuantumCircuit(1).x(0), Statevector(1));
  EXPECT_NEAR(std::abs(one.amplitudes()(1) - 1.0), 0.0, 1e-15);
  const auto plus = run_circuit(QuantumCircuit(1).h(0), Statevector(1));
  EXPECT_NEAR(plus.amplitudes()(0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(plus.amplitudes()(1).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_THROW((void)run_circuit(QuantumCircuit(2), Statevector(1)), ContractError);
}

TEST(Statevector, QubitOrderIsBigEndian) {
  // X on qubit 0 of two qubits sets the most significant bit.
  const auto s = run_circuit(QuantumCircuit(2).x(0), Statevector(2));
  EXPECT_NEAR(std::abs(s.amplitudes()(2)), 1.0, 1e-15);
  const auto bell = run_circuit(QuantumCircuit(2).h(0).cnot(0, 1), Statevector(2));
  EXPECT_NEAR(std::norm(bell.amplitudes()(0)), 0.5, 1e-15);
  EXPECT_NEAR(std::norm(bell.amplitudes()(3)), 0.5, 1e-15);
}

TEST(Statevector, NormPreserved) {
  std::mt19937_64 rng(6);
  const auto c = testing::random_circuit(rng, 6, 100);
  const auto s = run_circuit(c, Statevector::from_amplitudes(testing::random_state(rng, 64)));
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);

  const auto long_circuit = testing::random_circuit(rng, 5, 10000);
  EXPECT_NEAR(run_circuit(long_circuit, Statevector(5)).norm_squared(), 1.0, 1e-12);
}

TEST(Gates, FixedSetIsUnitary) {
  for (const auto& c : {QuantumCircuit(2).h(0), QuantumCircuit(2).x(0), QuantumCircuit(2).t(0),
                        QuantumCircuit(2).cnot(0, 1)}) {
    EXPECT_LT(unitarity_error(gate_matrix(c.gates()[0])), 1e-14);
  }
  ComplexMatrix not_unitary = ComplexMatrix::Identity(2, 2) * 2.0;
  EXPECT_THROW(QuantumCircuit(1).unitary(not_unitary, {0}), ContractError);
}

TEST(Circuit, StatevectorAgreesWithAssembledUnitary) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = testing::random_circuit(rng, 4, 30);
    const ComplexVector psi = testing::random_state(rng, 16);
    const ComplexVector direct = run_circuit(c, Statevector::from_amplitudes(psi)).amplitudes();
    EXPECT_LT((direct - circuit_unitary(c) * psi).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Circuit, JsonRoundTrip) {
  std::mt19937_64 rng(4);
  const auto c = testing::random_circuit(rng, 3, 20);
  const auto back = QuantumCircuit::from_json_text(c.to_json_text());
  EXPECT_EQ(back.size(), c.size());
  EXPECT_LT((circuit_unitary(back) - circuit_unitary(c)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW((void)QuantumCircuit::from_json_text(R"({"qubits":1,"gates":[["Q",0]]})"), ParseError);
  EXPECT_THROW((void)QuantumCircuit::from_json_text(R"({"qubits":1,"gates":[["H",3]]})"), RangeError);
}

TEST(ExpmExact, Examples) {
  const ComplexMatrix zero_t = expm_exact(path_gram(4), 0.0);
  EXPECT_LT((zero_t - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-14);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(1, 1) = kPi;
  const ComplexMatrix u = expm_exact(d, 1.0);
  EXPECT_NEAR(std::abs(u(0, 0) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(u(1, 1) + 1.0), 0.0, 1e-14);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    EXPECT_LT(unitarity_error(expm_exact(testing::random_hermitian(rng, 8), 1.3)), 1e-10);
  }
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  EXPECT_THROW((void)expm_exact(bad, 1.0), ContractError);
}

TEST(ExpmTaylor, Examples) {
  const auto path = ata_oracle(path_adjacency_oracle(8));
  for (int k : {0, 3, 10}) {
    EXPECT_LT((expm_taylor(path, 0.0, k) - ComplexMatrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-15);
  }
  const double t = kPi / 4;
  const ComplexMatrix exact = expm_exact(materialize(path), t);
  EXPECT_LT(op_norm(expm_taylor(path, t, 40) - exact), 1e-12);
  EXPECT_THROW((void)expm_taylor(path, 1.0, 10), ContractError);
}

TEST(ExpmTaylor, ErrorNonincreasingAndBounded) {
  const auto path = ata_oracle(path_adjacency_oracle(8));
  const double t = kPi / 4;
  const double x = row_sum_norm(path) * t;
  const ComplexMatrix exact = expm_exact(materialize(path), t);
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= 40; ++k) {
    const double err = op_norm(expm_taylor(path, t, k) - exact);
    // Double-precision rounding floors the measured error near 1e-15.
    EXPECT_LE(err, prev + 1e-14) << "K=" << k;
    EXPECT_LE(err, taylor_tail_bound(x, k) + 1e-14) << "K=" << k;
    prev = err;
  }
}

TEST(ExpmTaylor, ExtendedPrecisionErrorsMatchDoubleWhereResolvable) {
  const auto path = ata_oracle(path_adjacency_oracle(8));
  const double t = kPi / 4;
  const ComplexMatrix exact = expm_exact(materialize(path), t);
  std::vector<int> orders{2, 4, 6, 8, 10};
  const auto mp = taylor_truncation_errors(path, t, orders);
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const double dbl = op_norm(expm_taylor(path, t, orders[i]) - exact);
    EXPECT_NEAR(mp[i], dbl, 1e-13 + 1e-9 * dbl);
  }
}

TEST(ExpmTaylor, OrderSelection) {
  const int k = taylor_order_for(kPi, 1e-10);
  EXPECT_LE(taylor_tail_bound(kPi, k), 1e-10);
  EXPECT_GT(taylor_tail_bound(kPi, k - 1), 1e-10);
  EXPECT_EQ(taylor_tail_bound(0.0, 5), 0.0);
}

TEST(OneBitPe, Examples) {
  const ComplexVector psi = ComplexVector::Unit(4, 1);
  EXPECT_NEAR(one_bit_pe(ComplexMatrix::Identity(4, 4), psi), 1.0, 1e-15);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = kPi;
  EXPECT_NEAR(one_bit_pe(expm_exact(d, 1.0), ComplexVector(ComplexVector::Unit(2, 0))), 0.0, 1e-15);
  EXPECT_THROW((void)one_bit_pe(ComplexMatrix::Identity(4, 4) * 1.1, psi), ContractError);
}

TEST(OneBitPe, EigenvectorsFollowCosineLaw) {
  for (std::uint64_t ell = 2; ell <= 16; ++ell) {
    const DenseMatrix a = path_gram(ell);
    const double t = kPi / 4;
    const ComplexMatrix u = expm_exact(a, t);
    const auto pairs = symmetric_eigenpairs(a);
    for (Eigen::Index j = 0; j < pairs.values.size(); ++j) {
      const ComplexVector v = pairs.vectors.col(j).cast<Complex>();
      EXPECT_NEAR(one_bit_pe(u, v), (1.0 + std::cos(pairs.values(j) * t)) / 2.0, 1e-10);
    }
  }
}

TEST(OneBitPe, AffineInEigenbasis) {
  std::mt19937_64 rng(77);
  const DenseMatrix a = path_gram(6);
  const double t = 0.4;
  const ComplexMatrix u = expm_exact(a, t);
  const auto pairs = symmetric_eigenpairs(a);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexVector alpha = testing::random_state(rng, 6);
    const ComplexVector psi = pairs.vectors.cast<Complex>() * alpha;
    double expect = 0;
    for (int j = 0; j < 6; ++j) expect += std::norm(alpha(j)) * (1.0 + std::cos(pairs.values(j) * t)) / 2.0;
    EXPECT_NEAR(one_bit_pe(u, psi), expect, 1e-10);
  }
}

TEST(Acceptance, DirectOutputVerifier) {
  Verifier v;
  v.circuit = QuantumCircuit(1);
  v.circuit.x(0).x(0);
  v.witness_qubits = 1;
  v.output_qubit = 0;
  v.completeness_c = 0.9;
  v.soundness_s = 0.1;
  EXPECT_NEAR(acceptance_probability(v, Statevector::basis(1, 1)), 1.0, 1e-15);
  EXPECT_NEAR(acceptance_probability(v, Statevector::basis(1, 0)), 0.0, 1e-15);
  EXPECT_THROW((void)acceptance_probability(v, Statevector(2)), ContractError);
}

TEST(Acceptance, MatchesAcceptOperatorOnRandomVerifiers) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const Verifier v = testing::random_verifier(rng, 2, 1, 12);
    const ComplexMatrix q = accept_operator(v).matrix;
    for (int w = 0; w < 20; ++w) {
      const ComplexVector psi = testing::random_state(rng, 4);
      const double direct = acceptance_probability(v, Statevector::from_amplitudes(psi));
      EXPECT_NEAR(direct, (psi.adjoint() * q * psi)(0).real(), 1e-12);
    }
  }
}

TEST(Acceptance, LinearInDensityMatrix) {
  std::mt19937_64 rng(22);
  const Verifier v = testing::random_verifier(rng, 2, 1, 10);
  const ComplexVector a = testing::random_state(rng, 4);
  const ComplexVector b = testing::random_state(rng, 4);
  const ComplexMatrix rho = 0.3 * a * a.adjoint() + 0.7 * b * b.adjoint();
  const double mixed = acceptance_probability(v, rho);
  const double expect = 0.3 * acceptance_probability(v, Statevector::from_amplitudes(a)) +
                        0.7 * acceptance_probability(v, Statevector::from_amplitudes(b));
  EXPECT_NEAR(mixed, expect, 1e-12);
}

}  // namespace
}  // namespace qmaexp
