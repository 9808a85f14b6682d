// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qmaexp/errors.hpp"
#include "qmaexp/instance_io.hpp"
#include "qmaexp/protocols.hpp"
#include "qmaexp/rtm.hpp"
#include "test_support.hpp"

namespace qmaexp {
namespace {

using testing::verifier_path;

const std::vector<std::string> kVerifiers{"amp_yes", "amp_no", "identity_gate", "cnot_copy", "t_phase"};

Verifier load(const std::string& name) { return Verifier::from_file(verifier_path(name)); }

double max_q_eigenvalue(const Verifier& v) { return hermitian_eigenvalues(accept_operator(v).matrix).maxCoeff(); }

TEST(AcceptOperator, Examples) {
  const auto q = accept_operator(load("identity_gate"));
  ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
  expect(1, 1) = 1.0;
  EXPECT_LT((q.matrix - expect).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((accept_operator(load("cnot_copy")).matrix - expect).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(AcceptOperator, HandBuiltRotationVerifier) {
  // H on the witness then a controlled rotation: Q = H diag(p0, p1) H.
  const auto v = load("amp_yes");
  RealMatrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  RealMatrix d = RealMatrix::Zero(2, 2);
  d(0, 0) = 0.2;
  d(1, 1) = 0.9;
  const RealMatrix expect = h * d * h;
  EXPECT_LT((accept_operator(v).matrix.real() - expect).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(accept_operator(v).matrix.imag().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(AcceptOperator, RandomVerifiersArePsdContractions) {
  std::mt19937_64 rng(40);
  for (int trial = 0; trial < 20; ++trial) {
    const auto q = accept_operator(testing::random_verifier(rng, 1 + trial % 2, 1, 8));
    EXPECT_LT((q.matrix - q.matrix.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    const auto ev = hermitian_eigenvalues(q.matrix);
    EXPECT_GE(ev.minCoeff(), -1e-10);
    EXPECT_LE(ev.maxCoeff(), 1 + 1e-10);
  }
}

TEST(AcceptOperator, ConsistentWithSimulationOnCorpus) {
  std::mt19937_64 rng(41);
  for (const auto& name : kVerifiers) {
    const auto v = load(name);
    const ComplexMatrix q = accept_operator(v).matrix;
    double worst = 0;
    for (int w = 0; w < 200; ++w) {
      const ComplexVector psi = testing::random_state(rng, 1 << v.witness_qubits);
      const double direct = acceptance_probability(v, Statevector::from_amplitudes(psi));
      worst = std::max(worst, std::abs(direct - (psi.adjoint() * q * psi)(0).real()));
    }
    EXPECT_LE(worst, 1e-12) << name;
  }
}

TEST(MixedWitness, Examples) {
  EXPECT_NEAR(mixed_witness_acceptance(AcceptOperator{3, ComplexMatrix::Identity(8, 8)}), 1.0, 1e-15);
  EXPECT_NEAR(mixed_witness_acceptance(load("identity_gate")), 0.5, 1e-15);
}

TEST(MixedWitness, EqualsBasisAverageAndDensityRoute) {
  std::mt19937_64 rng(42);
  std::vector<Verifier> vs;
  for (const auto& name : kVerifiers) vs.push_back(load(name));
  for (int i = 0; i < 10; ++i) vs.push_back(testing::random_verifier(rng, 1 + i % 3, 1, 10));
  for (const auto& v : vs) {
    const int dim = 1 << v.witness_qubits;
    double avg = 0;
    for (int b = 0; b < dim; ++b) avg += acceptance_probability(v, Statevector::basis(v.witness_qubits, b));
    avg /= dim;
    const double mixed = mixed_witness_acceptance(v);
    EXPECT_NEAR(mixed, avg, 1e-12);
    const ComplexMatrix rho = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
    EXPECT_NEAR(mixed, acceptance_probability(v, rho), 1e-12);
  }
}

TEST(Reflections, AreInvolutions) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const auto r = reflections(testing::random_verifier(rng, 1 + trial % 2, 1 + trial % 2, 6));
    const auto n = r.r0.rows();
    EXPECT_LT((r.r0 * r.r0 - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((r.r1 * r.r1 - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((r.r0 - r.r0.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((r.r1 - r.r1.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  }
  const auto id = reflections(load("identity_gate"));
  EXPECT_LT((id.r0 - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
}

// Nontrivial eigen-angles come in +/- pairs and cos^2(angle / 2) runs over
// the eigenvalues of Q strictly inside (0, 1).
void expect_jordan_pairing(const Verifier& v) {
  const auto angles = rotation_angles(reflections(v));
  std::vector<double> pos;
  std::vector<double> neg;
  for (double a : angles) {
    if (std::abs(a) < 1e-6 || std::abs(a) > std::numbers::pi - 1e-6) continue;
    (a > 0 ? pos : neg).push_back(std::abs(a));
  }
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());
  ASSERT_EQ(pos.size(), neg.size());
  for (std::size_t i = 0; i < pos.size(); ++i) EXPECT_NEAR(pos[i], neg[i], 1e-8);

  std::vector<double> from_angles;
  for (double a : pos) from_angles.push_back(std::pow(std::cos(a / 2), 2));
  std::vector<double> from_q;
  for (double p : hermitian_eigenvalues(accept_operator(v).matrix)) {
    if (p > 1e-6 && p < 1 - 1e-6) from_q.push_back(p);
  }
  std::sort(from_angles.begin(), from_angles.end());
  std::sort(from_q.begin(), from_q.end());
  ASSERT_EQ(from_angles.size(), from_q.size());
  for (std::size_t i = 0; i < from_q.size(); ++i) EXPECT_NEAR(from_angles[i], from_q[i], 1e-8);
}

TEST(Reflections, JordanPairing) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    SCOPED_TRACE(trial);
    expect_jordan_pairing(testing::random_verifier(rng, 1 + trial % 2, 1, 8));
  }
  expect_jordan_pairing(load("amp_yes"));
  expect_jordan_pairing(load("amp_no"));
}

// --- gapped verifier -------------------------------------------------------

struct MachineCase {
  std::string machine;
  std::string input;
};

const std::vector<MachineCase> kGappedCases{{"first_bit", "0"}, {"first_bit", "1"}, {"both_ones", "11"},
                                            {"both_ones", "10"}, {"both_ones", "01"}};

TEST(GappedVerifier, ConfigExamples) {
  const auto path = ata_oracle(path_adjacency_oracle(8));
  const auto cfg = gapped_config(path, 3);
  EXPECT_NEAR(cfg.evo_time, std::numbers::pi / (path.entry_bound() * path.sparsity()), 1e-15);
  EXPECT_NEAR(cfg.epsilon, std::ldexp(1.0, -6) * cfg.evo_time * cfg.evo_time / 16, 1e-18);
  const double x = path.entry_bound() * path.sparsity() * cfg.evo_time;
  EXPECT_LE(taylor_tail_bound(x, cfg.taylor_order), cfg.epsilon);
  EXPECT_GT(taylor_tail_bound(x, cfg.taylor_order - 1), cfg.epsilon);
  EXPECT_THROW((void)gapped_config(path, 13), ConfigurationError);
}

TEST(GappedVerifier, ZeroMatrixAcceptsEverything) {
  const RowOracleMatrix zero(4, 1, 1, [](std::uint64_t) { return SparseRow{}; });
  const GappedVerifier gv(zero, 2);
  std::mt19937_64 rng(45);
  for (int i = 0; i < 10; ++i) {
    EXPECT_NEAR(gv.acceptance(testing::random_state(rng, 4)), 1.0, gv.config().epsilon);
  }
}

TEST(GappedVerifier, EigenvectorsFollowCosineLaw) {
  // Taylor error <= epsilon in operator norm moves the acceptance by at most ~epsilon.
  for (const auto& c : kGappedCases) {
    const auto m = load_machine(testing::machine_path(c.machine));
    const auto g = reduce_to_gapped(m, c.input);
    const GappedVerifier gv(g.matrix, g.gap_exponent);
    const auto pairs = symmetric_eigenpairs(materialize(g.matrix));
    const double t = gv.config().evo_time;
    for (Eigen::Index j = 0; j < pairs.values.size(); j += 5) {
      const ComplexVector v = pairs.vectors.col(j).cast<Complex>();
      EXPECT_NEAR(gv.acceptance(v), (1 + std::cos(pairs.values(j) * t)) / 2, 2 * gv.config().epsilon + 1e-12);
    }
  }
}

TEST(GappedVerifier, CompletenessAndSoundness) {
  for (const auto& c : kGappedCases) {
    SCOPED_TRACE(c.machine + ":" + c.input);
    const auto m = load_machine(testing::machine_path(c.machine));
    const auto g = reduce_to_gapped(m, c.input);
    const auto pairs = symmetric_eigenpairs(materialize(g.matrix));
    const ComplexVector ground = pairs.vectors.col(0).cast<Complex>();
    const GappedVerifier gv(g.matrix, g.gap_exponent);
    const auto& cfg = gv.config();
    if (!testing::reference_accepts(m, c.input)) {
      // Singular: the null vector is the honest witness.
      EXPECT_GE(gv.acceptance(ground), cfg.completeness_bound);
      EXPECT_NEAR(gapped_verifier(g.matrix, g.gap_exponent, ground), gv.acceptance(ground), 1e-15);
    } else {
      EXPECT_LE(gv.best_acceptance().first, cfg.soundness_bound);
      EXPECT_LE(gv.acceptance(ground), cfg.soundness_bound);
    }
  }
}

TEST(GappedVerifier, BestAcceptanceDominatesWitnesses) {
  const auto m = load_machine(testing::machine_path("first_bit"));
  const auto g = reduce_to_gapped(m, "1");
  const GappedVerifier gv(g.matrix, g.gap_exponent);
  const auto [best, arg] = gv.best_acceptance();
  EXPECT_NEAR(gv.acceptance(arg), best, 1e-12);
  std::mt19937_64 rng(46);
  for (int i = 0; i < 50; ++i) {
    EXPECT_LE(gv.acceptance(testing::random_state(rng, static_cast<int>(g.matrix.dim()))), best + 1e-12);
  }
}

TEST(DecideGapped, CorpusMachines) {
  // Nonsingular (the machine accepts) means a spectral gap, which the verifier rejects.
  for (const auto& c : kGappedCases) {
    SCOPED_TRACE(c.machine + ":" + c.input);
    const auto m = load_machine(testing::machine_path(c.machine));
    const auto g = reduce_to_gapped(m, c.input);
    const auto d = decide_gapped(g.matrix, g.gap_exponent);
    const bool accepts = testing::reference_accepts(m, c.input);
    EXPECT_EQ(d.decision, accepts ? Decision::No : Decision::Yes);
    const double t = d.config.evo_time;
    EXPECT_GE(d.separation, std::ldexp(1.0, -2 * g.gap_exponent) * t * t / 8);
    EXPECT_NEAR(d.lambda_min, min_eigenvalue(materialize(g.matrix)), 1e-10);
  }
}

// --- clock Hamiltonian -------------------------------------------------------

TEST(Kitaev, StructureAndPsd) {
  for (const auto& name : kVerifiers) {
    SCOPED_TRACE(name);
    const auto v = load(name);
    const auto h = kitaev_hamiltonian(v);
    EXPECT_EQ(h.num_qubits, v.total_qubits() + v.gate_count());
    int widest = 0;
    for (const auto& t : h.terms) {
      widest = std::max(widest, static_cast<int>(t.qubits.size()));
      EXPECT_EQ(t.matrix.rows(), 1 << t.qubits.size());
      EXPECT_LT((t.matrix - t.matrix.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
      for (int q : t.qubits) EXPECT_LT(q, h.num_qubits);
    }
    EXPECT_LE(widest, 5);
    EXPECT_EQ(widest, h.locality);
    const ComplexMatrix dense = materialize_hamiltonian(h);
    EXPECT_GE(min_eigenvalue(dense), -1e-10);
    const double t_gates = v.gate_count();
    EXPECT_NEAR(h.threshold_a, (1 - v.completeness_c) / (t_gates + 1), 1e-15);
    EXPECT_NEAR(h.threshold_b, (1 - v.soundness_s) / (t_gates * t_gates * t_gates), 1e-15);
  }
}

TEST(Kitaev, HistoryStateOfIdentityGateHasZeroEnergy) {
  // V = I on one qubit, witness |1>: the uniform history state is annihilated.
  const auto h = kitaev_hamiltonian(load("identity_gate"));
  const ComplexMatrix dense = materialize_hamiltonian(h);
  ComplexVector hist = ComplexVector::Zero(dense.rows());
  hist(0b10) = 1 / std::sqrt(2.0);  // witness 1, clock 0
  hist(0b11) = 1 / std::sqrt(2.0);  // witness 1, clock 1
  EXPECT_LT((dense * hist).norm(), 1e-14);
  EXPECT_NEAR(min_eigenvalue(dense), 0.0, 1e-12);
}

TEST(Kitaev, YesBoundOnAcceptingVerifiers) {
  int checked = 0;
  for (const auto& name : kVerifiers) {
    const auto v = load(name);
    if (max_q_eigenvalue(v) < v.completeness_c - 1e-12) continue;
    ++checked;
    const auto h = kitaev_hamiltonian(v);
    EXPECT_LE(min_eigenvalue(materialize_hamiltonian(h)), h.threshold_a + 1e-12) << name;
  }
  EXPECT_GE(checked, 3);
}

TEST(Kitaev, ResourceCaps) {
  Verifier v;
  v.circuit = QuantumCircuit(1);
  for (int i = 0; i < kMaxClockGates + 1; ++i) v.circuit.x(0);
  v.witness_qubits = 1;
  v.completeness_c = 0.9;
  v.soundness_s = 0.1;
  EXPECT_THROW((void)kitaev_hamiltonian(v), ResourceError);
}

TEST(Kitaev, JsonRoundTrip) {
  const auto h = kitaev_hamiltonian(load("t_phase"));
  const auto back = precise_lh_from_json_text(precise_lh_to_json_text(h));
  EXPECT_EQ(back.num_qubits, h.num_qubits);
  EXPECT_EQ(back.terms.size(), h.terms.size());
  EXPECT_EQ(back.threshold_a, h.threshold_a);
  EXPECT_EQ(back.threshold_b, h.threshold_b);
  EXPECT_EQ((materialize_hamiltonian(back) - materialize_hamiltonian(h)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(PreciseBounds, Examples) {
  for (int t : {1, 3, 6}) {
    const auto ideal = precise_lh_bounds(t, 0.0, 5);
    EXPECT_TRUE(ideal.gap_ok);
    EXPECT_NEAR(ideal.b - ideal.a, std::ldexp(1.0, -5) / (t * t * t), 1e-15);
    EXPECT_FALSE(precise_lh_bounds(t, std::ldexp(1.0, -5), 5).gap_ok);
  }
  for (const auto& name : kVerifiers) {
    const auto v = load(name);
    const auto b = precise_lh_bounds(v, epsilon_rule(v.gate_count(), 8), 8);
    EXPECT_TRUE(b.gap_ok) << name;
    EXPECT_LT(epsilon_rule(v.gate_count(), 8) * (v.gate_count() * v.gate_count() + 1), std::ldexp(1.0, -8));
  }
}

// --- ground energy bisection ---------------------------------------------------

TEST(EnergySearch, DiagonalExample) {
  RealMatrix d = RealMatrix::Zero(2, 2);
  d(0, 0) = 0.375;
  d(1, 1) = 1.0;
  const auto s = binary_search_energy(DenseMatrix{d, true, false}, 10);
  EXPECT_LE(s.upper - s.lower, std::ldexp(1.0, -10));
  EXPECT_NEAR(s.estimate, 0.375, std::ldexp(1.0, -10));
  EXPECT_LE(s.lower, 0.375);
  EXPECT_GE(s.upper, 0.375);
}

TEST(EnergySearch, PathBlockAndBracketInvariant) {
  const DenseMatrix a{structured_matrix(BlockKind::Path, 16).matrix.cast<double>(), true, false};
  const double truth = min_eigenvalue(a);
  const auto s = binary_search_energy(a, 30);
  EXPECT_NEAR(s.estimate, truth, std::ldexp(1.0, -30) + 1e-10);
  ASSERT_FALSE(s.brackets.empty());
  double width = s.brackets.front().second - s.brackets.front().first;
  for (std::size_t i = 0; i < s.brackets.size(); ++i) {
    const auto [lo, hi] = s.brackets[i];
    EXPECT_LE(lo, truth + 1e-12);
    EXPECT_GE(hi, truth - 1e-12);
    if (i > 0) {
      EXPECT_NEAR(hi - lo, width / 2, 1e-15 + 1e-12 * width);
      width = hi - lo;
    }
  }
  EXPECT_THROW((void)binary_search_energy(a, 41), RangeError);
}

TEST(EnergySearch, ClockHamiltonian) {
  const auto h = kitaev_hamiltonian(load("amp_yes"));
  const double truth = min_eigenvalue(materialize_hamiltonian(h));
  const auto s = binary_search_energy(h, 30);
  EXPECT_NEAR(s.estimate, truth, std::ldexp(1.0, -30) + 1e-10);
}

}  // namespace
}  // namespace qmaexp
