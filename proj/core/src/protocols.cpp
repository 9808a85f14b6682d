// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmaexp/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qmaexp/errors.hpp"

namespace qmaexp {

namespace {

constexpr int kMaxAcceptQubits = 12;

bool is_output_one(std::uint64_t index, int num_qubits, int output_qubit) {
  return (index >> (num_qubits - 1 - output_qubit)) & 1U;
}

}  // namespace

AcceptOperator accept_operator(const Verifier& v) {
  v.check();
  if (v.total_qubits() > kMaxAcceptQubits) throw ResourceError("accept_operator: too many qubits");
  const ComplexMatrix u = circuit_unitary(v.circuit);
  const auto wdim = Eigen::Index{1} << v.witness_qubits;
  const auto stride = Eigen::Index{1} << v.ancilla_k;
  const auto n = v.total_qubits();
  // Columns of U V|w,0^k>, keeping only rows where the output qubit reads 1.
  ComplexMatrix cols = ComplexMatrix::Zero(u.rows(), wdim);
  for (Eigen::Index w = 0; w < wdim; ++w) {
    for (Eigen::Index x = 0; x < u.rows(); ++x) {
      if (is_output_one(static_cast<std::uint64_t>(x), n, v.output_qubit)) cols(x, w) = u(x, w * stride);
    }
  }
  AcceptOperator q;
  q.witness_qubits = v.witness_qubits;
  q.matrix = cols.adjoint() * cols;
  return q;
}

double mixed_witness_acceptance(const AcceptOperator& q) {
  return q.matrix.trace().real() / static_cast<double>(q.matrix.rows());
}

double mixed_witness_acceptance(const Verifier& v) { return mixed_witness_acceptance(accept_operator(v)); }

Reflections reflections(const Verifier& v) {
  v.check();
  if (v.total_qubits() > kMaxAcceptQubits) throw ResourceError("reflections: too many qubits");
  const ComplexMatrix u = circuit_unitary(v.circuit);
  const auto dim = u.rows();
  const auto stride = Eigen::Index{1} << v.ancilla_k;
  const int n = v.total_qubits();

  Reflections r;
  r.r0 = -ComplexMatrix::Identity(dim, dim);
  for (Eigen::Index i = 0; i < dim; i += stride) r.r0(i, i) = 1.0;

  ComplexMatrix proj = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    if (is_output_one(static_cast<std::uint64_t>(x), n, v.output_qubit)) proj(x, x) = 1.0;
  }
  r.r1 = 2.0 * (u.adjoint() * proj * u) - ComplexMatrix::Identity(dim, dim);
  return r;
}

std::vector<double> rotation_angles(const Reflections& r) {
  const ComplexMatrix w = r.r1 * r.r0;
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(w, false);
  if (solver.info() != Eigen::Success) throw ContractError("rotation_angles: eigensolver failed");
  std::vector<double> angles;
  angles.reserve(static_cast<std::size_t>(w.rows()));
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    double a = std::arg(solver.eigenvalues()(i));
    if (a <= -std::numbers::pi + 1e-12) a = std::numbers::pi;
    angles.push_back(a);
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

// ---------------------------------------------------------------------------

GappedVerifierConfig gapped_config(const RowOracleMatrix& m, int g) {
  if (g < 0) throw RangeError("gapped verifier: gap exponent must be nonnegative");
  if (g > kMaxGapExponent) {
    throw ConfigurationError("gapped verifier: g = " + std::to_string(g) + " puts epsilon below double precision");
  }
  GappedVerifierConfig cfg;
  cfg.gap_exponent = g;
  const double kd = norm_bound(m);
  cfg.evo_time = std::numbers::pi / std::max(kd, 1.0);
  const double gap2 = std::ldexp(1.0, -2 * g);
  const double t2 = cfg.evo_time * cfg.evo_time;
  cfg.epsilon = gap2 * t2 / 16.0;
  cfg.taylor_order = taylor_order_for(std::max(kd, 1.0) * cfg.evo_time, cfg.epsilon);
  cfg.completeness_bound = 1.0 - cfg.epsilon;
  cfg.soundness_bound = 1.0 - gap2 * t2 / 4.0 + cfg.epsilon + gap2 * gap2 * t2 * t2 / 48.0;
  return cfg;
}

GappedVerifier::GappedVerifier(const RowOracleMatrix& m, int g) : config_(gapped_config(m, g)) {
  evolution_ = expm_taylor(m, config_.evo_time, config_.taylor_order);
  // expm_taylor only needs row access; symmetry is checked here since the
  // protocol is defined for Hermitian A.
  const auto rows = collect_rows(m);
  for (std::uint64_t i = 0; i < m.dim(); ++i) {
    for (const auto& e : rows[i]) {
      const auto& back = rows[e.index];
      if (std::none_of(back.begin(), back.end(), [&](const SparseEntry& b) { return b.index == i && b.value == e.value; })) {
        throw ContractError("gapped verifier: matrix is not symmetric");
      }
    }
  }
}

double GappedVerifier::acceptance(const ComplexVector& witness) const { return one_bit_pe(evolution_, witness); }

std::pair<double, ComplexVector> GappedVerifier::best_acceptance() const {
  const auto n = evolution_.rows();
  const ComplexMatrix plus = ComplexMatrix::Identity(n, n) + evolution_;
  ComplexMatrix op = plus.adjoint() * plus / 4.0;
  op = (op + op.adjoint()).eval() / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(op);
  if (solver.info() != Eigen::Success) throw ContractError("gapped verifier: eigensolver failed");
  ComplexVector top = solver.eigenvectors().col(n - 1);
  top.normalize();
  return {acceptance(top), top};
}

double gapped_verifier(const RowOracleMatrix& m, int g, const ComplexVector& witness) {
  return GappedVerifier(m, g).acceptance(witness);
}

GappedDecision decide_gapped(const RowOracleMatrix& m, int g) {
  const GappedVerifier verifier(m, g);
  GappedDecision d;
  d.config = verifier.config();
  d.lambda_min = min_eigenvalue(materialize(m));
  d.best_acceptance = verifier.best_acceptance().first;
  d.midpoint = 0.5 * (d.config.completeness_bound + d.config.soundness_bound);
  if (d.best_acceptance > d.midpoint) {
    d.decision = Decision::Yes;
    d.separation = d.best_acceptance - d.config.soundness_bound;
  } else {
    d.decision = Decision::No;
    d.separation = d.config.completeness_bound - d.best_acceptance;
  }
  return d;
}

// ---------------------------------------------------------------------------

EnergySearch binary_search_energy(const ComplexMatrix& h, int bits) {
  if (bits < 1 || bits > 40) throw RangeError("binary_search_energy: bits must be in [1, 40]");
  if (h.rows() != h.cols() || h.rows() == 0) throw ContractError("binary_search_energy: matrix must be square");
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > kSymmetryTolerance) {
    throw ContractError("binary_search_energy: matrix is not Hermitian");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    const double radius = h.row(i).cwiseAbs().sum() - std::abs(h(i, i));
    lo = std::min(lo, h(i, i).real() - radius);
    hi = std::max(hi, h(i, i).real() + radius);
  }
  // Widen slightly so rounding in the Sturm count cannot push lambda_min outside.
  const double pad = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  lo -= pad;
  hi += pad;

  const Tridiagonal tri = tridiagonalize(h);
  const double width = std::ldexp(1.0, -bits);
  EnergySearch out;
  out.brackets.emplace_back(lo, hi);
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (count_eigenvalues_below(tri, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
    out.brackets.emplace_back(lo, hi);
  }
  out.lower = lo;
  out.upper = hi;
  out.estimate = 0.5 * (lo + hi);
  return out;
}

EnergySearch binary_search_energy(const DenseMatrix& h, int bits) {
  return binary_search_energy(ComplexMatrix(h.entries.cast<Complex>()), bits);
}

EnergySearch binary_search_energy(const PreciseLHInstance& h, int bits) {
  return binary_search_energy(materialize_hamiltonian(h), bits);
}

}  // namespace qmaexp
