// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

// In-place amplification: r rounds of phase estimation on W = R1 R0 with the
// register simulated explicitly, then a median vote over the folded phases.

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>

#include "qmaexp/errors.hpp"
#include "qmaexp/protocols.hpp"

namespace qmaexp {

namespace {

enum PhaseClass { kLow = 0, kMid = 1, kHigh = 2 };

// Kraus operators of one phase-estimation round, grouped by reading class.
using Instrument = std::array<std::vector<ComplexMatrix>, 3>;

ComplexMatrix inverse_qft(int qubits) {
  const auto n = Eigen::Index{1} << qubits;
  ComplexMatrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index z = 0; z < n; ++z) {
    for (Eigen::Index y = 0; y < n; ++y) {
      // Reduce zy mod n before the angle so large registers stay exact.
      const auto k = static_cast<double>((z * y) % n);
      f(z, y) = std::polar(scale, -2.0 * std::numbers::pi * k / static_cast<double>(n));
    }
  }
  return f;
}

Instrument build_instrument(const Verifier& v, const AmplificationParams& params) {
  const Reflections refl = reflections(v);
  const ComplexMatrix w = refl.r1 * refl.r0;
  const int b = params.register_qubits();
  const int sys = v.total_qubits();
  if (b + sys > kMaxQubits) throw ResourceError("nwz_amplify: register plus system exceeds qubit cap");
  const auto d = w.rows();
  const auto n_readings = Eigen::Index{1} << b;

  // controlled-W^(2^(b-1-j)) for register qubit j.
  std::vector<ComplexMatrix> controlled(static_cast<std::size_t>(b));
  ComplexMatrix power = w;
  for (int j = b - 1; j >= 0; --j) {
    ComplexMatrix c = ComplexMatrix::Identity(2 * d, 2 * d);
    c.bottomRightCorner(d, d) = power;
    controlled[static_cast<std::size_t>(j)] = std::move(c);
    power = (power * power).eval();
  }
  std::vector<int> reg(static_cast<std::size_t>(b));
  for (int j = 0; j < b; ++j) reg[static_cast<std::size_t>(j)] = j;
  const ComplexMatrix iqft = inverse_qft(b);
  Eigen::Matrix2cd had;
  had << 1, 1, 1, -1;
  had /= std::numbers::sqrt2;

  std::vector<ComplexMatrix> kraus(static_cast<std::size_t>(n_readings), ComplexMatrix::Zero(d, d));
  for (Eigen::Index s = 0; s < d; ++s) {
    Statevector state = Statevector::basis(b + sys, static_cast<std::uint64_t>(s));
    for (int j = 0; j < b; ++j) state.apply_single(had, j);
    for (int j = 0; j < b; ++j) {
      std::vector<int> targets{j};
      for (int q = 0; q < sys; ++q) targets.push_back(b + q);
      state.apply_dense(controlled[static_cast<std::size_t>(j)], targets);
    }
    state.apply_dense(iqft, reg);
    for (Eigen::Index z = 0; z < n_readings; ++z) {
      kraus[static_cast<std::size_t>(z)].col(s) = state.amplitudes().segment(z * d, d);
    }
  }

  Instrument inst;
  const double tol = params.tolerance();
  for (Eigen::Index z = 0; z < n_readings; ++z) {
    const double phase = static_cast<double>(z) / static_cast<double>(n_readings);
    const double folded = std::min(phase, 1.0 - phase);
    PhaseClass cls = kMid;
    if (folded <= params.phi_c + tol) {
      cls = kLow;
    } else if (folded >= params.phi_s - tol) {
      cls = kHigh;
    }
    inst[cls].push_back(std::move(kraus[static_cast<std::size_t>(z)]));
  }
  return inst;
}

struct Outcome {
  Complex yes{0.0};
  Complex no{0.0};
  Complex violation{0.0};
};

// Runs r rounds on an operator input (linear, so non-Hermitian inputs are
// allowed for polarization) and sums the traces per median class.
Outcome run_rounds(const Instrument& inst, const ComplexMatrix& rho0, int r) {
  std::map<std::pair<int, int>, ComplexMatrix> branches;  // (low count, high count)
  branches.emplace(std::make_pair(0, 0), rho0);
  for (int round = 0; round < r; ++round) {
    std::map<std::pair<int, int>, ComplexMatrix> next;
    for (const auto& [key, rho] : branches) {
      for (int cls = 0; cls < 3; ++cls) {
        if (inst[static_cast<std::size_t>(cls)].empty()) continue;
        ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
        for (const auto& k : inst[static_cast<std::size_t>(cls)]) out.noalias() += k * rho * k.adjoint();
        const std::pair<int, int> nk{key.first + (cls == kLow), key.second + (cls == kHigh)};
        auto it = next.find(nk);
        if (it == next.end()) {
          next.emplace(nk, std::move(out));
        } else {
          it->second += out;
        }
      }
    }
    branches = std::move(next);
  }
  // Lower median: element (r-1)/2 of the sorted readings, with low < mid < high.
  const int med = (r - 1) / 2;
  Outcome o;
  for (const auto& [key, rho] : branches) {
    const Complex tr = rho.trace();
    if (key.first > med) {
      o.yes += tr;
    } else if (key.second >= r - med) {
      o.no += tr;
    } else {
      o.violation += tr;
    }
  }
  return o;
}

ComplexMatrix embed_witness_operator(const ComplexMatrix& x, int ancilla_k) {
  const auto stride = Eigen::Index{1} << ancilla_k;
  ComplexMatrix big = ComplexMatrix::Zero(x.rows() * stride, x.cols() * stride);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) big(i * stride, j * stride) = x(i, j);
  }
  return big;
}

}  // namespace

AmplificationParams AmplificationParams::make(double c, double s, int trials_r, std::optional<int> precision_bits) {
  if (!(s >= 0.0 && s < c && c <= 1.0)) throw ContractError("AmplificationParams: requires 0 <= s < c <= 1");
  AmplificationParams p;
  p.trials_r = trials_r;
  p.phi_c = std::acos(std::sqrt(c)) / std::numbers::pi;
  p.phi_s = std::acos(std::sqrt(s)) / std::numbers::pi;
  if (precision_bits) {
    p.precision_bits = *precision_bits;
  } else {
    p.precision_bits = 1;
    while (std::ldexp(1.0, -p.precision_bits) >= (p.phi_s - p.phi_c) / 4.0) ++p.precision_bits;
  }
  p.check();
  return p;
}

double AmplificationParams::tolerance() const { return std::ldexp(1.0, -precision_bits); }

void AmplificationParams::check() const {
  if (trials_r < 1) throw ContractError("AmplificationParams: need at least one trial");
  if (precision_bits < 1) throw ContractError("AmplificationParams: precision must be positive");
  if (!(phi_c < phi_s)) throw ContractError("AmplificationParams: phi_c must be below phi_s");
  if (!(tolerance() < (phi_s - phi_c) / 4.0)) {
    throw ContractError("AmplificationParams: precision cannot separate the thresholds");
  }
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::Yes: return "YES";
    case Decision::No: return "NO";
    case Decision::PromiseViolated: return "PROMISE_VIOLATED";
  }
  return "?";
}

AmplificationResult nwz_amplify(const Verifier& v, const AmplificationParams& params, const Statevector& witness) {
  params.check();
  v.check();
  if (witness.num_qubits() != v.witness_qubits) throw ContractError("nwz_amplify: witness size mismatch");
  const Instrument inst = build_instrument(v, params);
  const Statevector input = v.ancilla_k > 0 ? witness.tensor(Statevector(v.ancilla_k)) : witness;
  const ComplexMatrix rho = input.amplitudes() * input.amplitudes().adjoint();
  const Outcome o = run_rounds(inst, rho, params.trials_r);

  AmplificationResult res;
  res.p_yes = o.yes.real();
  res.p_no = o.no.real();
  res.p_violation = o.violation.real();
  res.decision = Decision::Yes;
  res.probability = res.p_yes;
  if (res.p_no > res.probability) {
    res.decision = Decision::No;
    res.probability = res.p_no;
  }
  if (res.p_violation > res.probability) {
    res.decision = Decision::PromiseViolated;
    res.probability = res.p_violation;
  }
  return res;
}

AcceptOperator amplified_accept_operator(const Verifier& v, const AmplificationParams& params) {
  params.check();
  v.check();
  const Instrument inst = build_instrument(v, params);
  const auto wdim = Eigen::Index{1} << v.witness_qubits;
  AcceptOperator e;
  e.witness_qubits = v.witness_qubits;
  e.matrix = ComplexMatrix::Zero(wdim, wdim);
  // tr(E |i><j|) = E(j, i).
  for (Eigen::Index i = 0; i < wdim; ++i) {
    for (Eigen::Index j = 0; j < wdim; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(wdim, wdim);
      unit(i, j) = 1.0;
      e.matrix(j, i) = run_rounds(inst, embed_witness_operator(unit, v.ancilla_k), params.trials_r).yes;
    }
  }
  return e;
}

}  // namespace qmaexp
