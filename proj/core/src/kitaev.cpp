// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

// Clock construction with a unary clock. Clock value t is encoded as
// 1^t 0^(T-t) on clock qubits c_1..c_T, which follow the circuit qubits.

#include <cmath>

#include "qmaexp/errors.hpp"
#include "qmaexp/protocols.hpp"

namespace qmaexp {

namespace {

ComplexMatrix projector_on(int qubits, std::uint64_t pattern) {
  const auto n = Eigen::Index{1} << qubits;
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  p(static_cast<Eigen::Index>(pattern), static_cast<Eigen::Index>(pattern)) = 1.0;
  return p;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

// |to><from| on `qubits` clock qubits.
ComplexMatrix transition(int qubits, std::uint64_t to, std::uint64_t from) {
  const auto n = Eigen::Index{1} << qubits;
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  m(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from)) = 1.0;
  return m;
}

}  // namespace

PreciseLHInstance kitaev_hamiltonian(const Verifier& v) {
  v.check();
  const int t_gates = v.gate_count();
  const int n = v.total_qubits();
  if (t_gates < 1) throw ContractError("kitaev_hamiltonian: circuit has no gates");
  if (t_gates > kMaxClockGates) throw ResourceError("kitaev_hamiltonian: too many gates for the clock space");
  if (n > kMaxClockCircuitQubits) throw ResourceError("kitaev_hamiltonian: too many circuit qubits");

  PreciseLHInstance h;
  h.num_qubits = n + t_gates;
  auto clock = [&](int t) { return n + t - 1; };  // clock qubit c_t, t = 1..T

  // Ancillas must start in |0> once the clock has left 0.
  for (int a = v.witness_qubits; a < n; ++a) {
    h.terms.push_back({"in", {a, clock(1)}, projector_on(2, 0b10)});
  }
  h.terms.push_back({"out", {v.output_qubit, clock(t_gates)}, projector_on(2, 0b01)});
  for (int t = 1; t < t_gates; ++t) {
    h.terms.push_back({"clock", {clock(t), clock(t + 1)}, projector_on(2, 0b01)});
  }

  for (int t = 1; t <= t_gates; ++t) {
    const Gate& g = v.circuit.gates()[static_cast<std::size_t>(t - 1)];
    const ComplexMatrix u = gate_matrix(g);
    std::vector<int> clock_qubits;
    std::uint64_t before = 0;  // clock pattern for t - 1
    std::uint64_t after = 0;   // clock pattern for t
    if (t_gates == 1) {
      clock_qubits = {clock(1)};
      before = 0b0;
      after = 0b1;
    } else if (t == 1) {
      clock_qubits = {clock(1), clock(2)};
      before = 0b00;
      after = 0b10;
    } else if (t == t_gates) {
      clock_qubits = {clock(t - 1), clock(t)};
      before = 0b10;
      after = 0b11;
    } else {
      clock_qubits = {clock(t - 1), clock(t), clock(t + 1)};
      before = 0b100;
      after = 0b110;
    }
    const int c = static_cast<int>(clock_qubits.size());
    const auto gdim = u.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(gdim, gdim);
    ComplexMatrix term = kron(id, projector_on(c, after)) + kron(id, projector_on(c, before)) -
                         kron(u, transition(c, after, before)) - kron(u.adjoint(), transition(c, before, after));
    term *= 0.5;
    std::vector<int> qubits = g.qubits;
    qubits.insert(qubits.end(), clock_qubits.begin(), clock_qubits.end());
    h.terms.push_back({"prop", std::move(qubits), std::move(term)});
  }

  for (const auto& term : h.terms) h.locality = std::max(h.locality, static_cast<int>(term.qubits.size()));
  h.threshold_a = (1.0 - v.completeness_c) / (t_gates + 1.0);
  h.threshold_b = (1.0 - v.soundness_s) / std::pow(static_cast<double>(t_gates), 3);
  return h;
}

ComplexMatrix materialize_hamiltonian(const PreciseLHInstance& h) {
  if (h.num_qubits < 1 || h.num_qubits > 12) throw ResourceError("materialize_hamiltonian: qubit count out of range");
  const int n = h.num_qubits;
  const auto dim = Eigen::Index{1} << n;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const auto& term : h.terms) {
    const auto k = static_cast<int>(term.qubits.size());
    const auto sub = Eigen::Index{1} << k;
    if (term.matrix.rows() != sub || term.matrix.cols() != sub) {
      throw ContractError("materialize_hamiltonian: term size does not match its qubits");
    }
    std::uint64_t mask = 0;
    std::vector<std::uint64_t> offsets(static_cast<std::size_t>(sub), 0);
    for (int j = 0; j < k; ++j) {
      const int q = term.qubits[static_cast<std::size_t>(j)];
      if (q < 0 || q >= n) throw RangeError("materialize_hamiltonian: term qubit out of range");
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
      if (mask & bit) throw ContractError("materialize_hamiltonian: repeated qubit in a term");
      mask |= bit;
      for (Eigen::Index s = 0; s < sub; ++s) {
        if (s & (Eigen::Index{1} << (k - 1 - j))) offsets[static_cast<std::size_t>(s)] |= bit;
      }
    }
    for (std::uint64_t base = 0; base < static_cast<std::uint64_t>(dim); ++base) {
      if (base & mask) continue;
      for (Eigen::Index xs = 0; xs < sub; ++xs) {
        const auto x = static_cast<Eigen::Index>(base | offsets[static_cast<std::size_t>(xs)]);
        for (Eigen::Index ys = 0; ys < sub; ++ys) {
          const auto y = static_cast<Eigen::Index>(base | offsets[static_cast<std::size_t>(ys)]);
          out(x, y) += term.matrix(xs, ys);
        }
      }
    }
  }
  return out;
}

PreciseLHBounds precise_lh_bounds(int gate_count_t, double epsilon, int g_prime) {
  if (gate_count_t < 1) throw RangeError("precise_lh_bounds: T must be positive");
  if (epsilon < 0.0) throw RangeError("precise_lh_bounds: epsilon must be nonnegative");
  const double t = gate_count_t;
  PreciseLHBounds out;
  out.a = epsilon / (t + 1.0);
  out.b = (std::ldexp(1.0, -g_prime) - epsilon) / (t * t * t);
  out.gap_ok = out.b - out.a > 0.0;
  return out;
}

PreciseLHBounds precise_lh_bounds(const Verifier& v, double epsilon, int g_prime) {
  return precise_lh_bounds(v.gate_count(), epsilon, g_prime);
}

double epsilon_rule(int gate_count_t, int g_prime) {
  if (gate_count_t < 1) throw RangeError("epsilon_rule: T must be positive");
  const double t = gate_count_t;
  return std::ldexp(1.0, -g_prime) / (2.0 * (t * t + 1.0));
}

}  // namespace qmaexp
