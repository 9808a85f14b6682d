// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmaexp/simulator.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <nlohmann/json.hpp>

#include "qmaexp/errors.hpp"
#include "qmaexp/verifier.hpp"

namespace qmaexp {

namespace {

constexpr double kNormTolerance = 1e-10;

std::uint64_t bit_of(int num_qubits, int qubit) { return std::uint64_t{1} << (num_qubits - 1 - qubit); }

Eigen::Matrix2cd hadamard() {
  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix2cd m;
  m << r, r, r, -r;
  return m;
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd t_gate() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4.0);
  return m;
}

ComplexMatrix cnot_matrix() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

}  // namespace

Statevector::Statevector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 0 || num_qubits > kMaxQubits) throw ResourceError("Statevector: qubit count out of range");
  amps_ = ComplexVector::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << num_qubits));
  amps_(0) = 1.0;
}

Statevector::Statevector(int num_qubits, ComplexVector amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {}

Statevector Statevector::from_amplitudes(ComplexVector amplitudes) {
  const auto n = static_cast<std::uint64_t>(amplitudes.size());
  if (n == 0 || (n & (n - 1)) != 0) throw ContractError("Statevector: length must be a power of two");
  const int q = std::countr_zero(n);
  if (q > kMaxQubits) throw ResourceError("Statevector: too many qubits");
  if (std::abs(amplitudes.squaredNorm() - 1.0) > kNormTolerance) throw ContractError("Statevector: not normalized");
  return Statevector(q, std::move(amplitudes));
}

Statevector Statevector::basis(int num_qubits, std::uint64_t index) {
  Statevector s(num_qubits);
  if (index >= s.dim()) throw RangeError("Statevector::basis: index out of range");
  s.amps_(0) = 0.0;
  s.amps_(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

void Statevector::check_qubit(int q) const {
  if (q < 0 || q >= num_qubits_) throw RangeError("qubit " + std::to_string(q) + " out of range");
}

void Statevector::apply_single(const Eigen::Matrix2cd& u, int qubit) {
  check_qubit(qubit);
  const std::uint64_t stride = bit_of(num_qubits_, qubit);
  for (std::uint64_t base = 0; base < dim(); base += 2 * stride) {
    for (std::uint64_t off = 0; off < stride; ++off) {
      const auto i0 = static_cast<Eigen::Index>(base + off);
      const auto i1 = static_cast<Eigen::Index>(base + off + stride);
      const Complex a0 = amps_(i0);
      const Complex a1 = amps_(i1);
      amps_(i0) = u(0, 0) * a0 + u(0, 1) * a1;
      amps_(i1) = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }
}

void Statevector::apply_cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw ContractError("CNOT: control equals target");
  const std::uint64_t cbit = bit_of(num_qubits_, control);
  const std::uint64_t tbit = bit_of(num_qubits_, target);
  for (std::uint64_t i = 0; i < dim(); ++i) {
    if ((i & cbit) && !(i & tbit)) {
      std::swap(amps_(static_cast<Eigen::Index>(i)), amps_(static_cast<Eigen::Index>(i | tbit)));
    }
  }
}

void Statevector::apply_dense(const ComplexMatrix& u, std::span<const int> qubits) {
  const auto k = static_cast<int>(qubits.size());
  const auto sub = static_cast<Eigen::Index>(std::uint64_t{1} << k);
  if (u.rows() != sub || u.cols() != sub) throw ContractError("apply_dense: matrix size does not match qubits");
  std::uint64_t mask = 0;
  std::vector<std::uint64_t> bits(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    check_qubit(qubits[static_cast<std::size_t>(j)]);
    bits[static_cast<std::size_t>(j)] = bit_of(num_qubits_, qubits[static_cast<std::size_t>(j)]);
    if (mask & bits[static_cast<std::size_t>(j)]) throw ContractError("apply_dense: repeated qubit");
    mask |= bits[static_cast<std::size_t>(j)];
  }
  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(sub), 0);
  for (Eigen::Index s = 0; s < sub; ++s) {
    for (int j = 0; j < k; ++j) {
      if (s & (Eigen::Index{1} << (k - 1 - j))) offsets[static_cast<std::size_t>(s)] |= bits[static_cast<std::size_t>(j)];
    }
  }
  ComplexVector local(sub);
  for (std::uint64_t base = 0; base < dim(); ++base) {
    if (base & mask) continue;
    for (Eigen::Index s = 0; s < sub; ++s) local(s) = amps_(static_cast<Eigen::Index>(base | offsets[static_cast<std::size_t>(s)]));
    local = u * local;
    for (Eigen::Index s = 0; s < sub; ++s) amps_(static_cast<Eigen::Index>(base | offsets[static_cast<std::size_t>(s)])) = local(s);
  }
}

double Statevector::probability_one(int qubit) const {
  check_qubit(qubit);
  const std::uint64_t b = bit_of(num_qubits_, qubit);
  double p = 0.0;
  for (std::uint64_t i = 0; i < dim(); ++i) {
    if (i & b) p += std::norm(amps_(static_cast<Eigen::Index>(i)));
  }
  return p;
}

Statevector Statevector::tensor(const Statevector& other) const {
  if (num_qubits_ + other.num_qubits_ > kMaxQubits) throw ResourceError("tensor: too many qubits");
  ComplexVector out(amps_.size() * other.amps_.size());
  for (Eigen::Index i = 0; i < amps_.size(); ++i) {
    out.segment(i * other.amps_.size(), other.amps_.size()) = amps_(i) * other.amps_;
  }
  return Statevector(num_qubits_ + other.num_qubits_, std::move(out));
}

QuantumCircuit::QuantumCircuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) throw ResourceError("QuantumCircuit: qubit count out of range");
}

void QuantumCircuit::check_qubits(std::span<const int> qubits) const {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] < 0 || qubits[i] >= num_qubits_) throw RangeError("gate qubit out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (qubits[i] == qubits[j]) throw ContractError("gate acts twice on the same qubit");
    }
  }
}

QuantumCircuit& QuantumCircuit::h(int q) {
  check_qubits(std::array{q});
  gates_.push_back({GateKind::H, {q}, std::nullopt});
  return *this;
}

QuantumCircuit& QuantumCircuit::x(int q) {
  check_qubits(std::array{q});
  gates_.push_back({GateKind::X, {q}, std::nullopt});
  return *this;
}

QuantumCircuit& QuantumCircuit::t(int q) {
  check_qubits(std::array{q});
  gates_.push_back({GateKind::T, {q}, std::nullopt});
  return *this;
}

QuantumCircuit& QuantumCircuit::cnot(int control, int target) {
  check_qubits(std::array{control, target});
  gates_.push_back({GateKind::CNOT, {control, target}, std::nullopt});
  return *this;
}

QuantumCircuit& QuantumCircuit::unitary(ComplexMatrix u, std::vector<int> qubits) {
  check_qubits(qubits);
  const auto sub = static_cast<Eigen::Index>(std::uint64_t{1} << qubits.size());
  if (qubits.empty() || u.rows() != sub || u.cols() != sub) throw ContractError("unitary: size does not match qubits");
  if (unitarity_error(u) > 1e-10) throw ContractError("unitary: matrix is not unitary");
  gates_.push_back({GateKind::Unitary, std::move(qubits), std::move(u)});
  return *this;
}

QuantumCircuit QuantumCircuit::from_json_text(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    QuantumCircuit c(j.at("qubits").get<int>());
    for (const auto& g : j.at("gates")) {
      const auto name = g.at(0).get<std::string>();
      if (name == "H") {
        c.h(g.at(1).get<int>());
      } else if (name == "X") {
        c.x(g.at(1).get<int>());
      } else if (name == "T") {
        c.t(g.at(1).get<int>());
      } else if (name == "CNOT") {
        c.cnot(g.at(1).get<int>(), g.at(2).get<int>());
      } else if (name == "U") {
        auto qubits = g.at(1).get<std::vector<int>>();
        const auto& rows = g.at(2);
        const auto n = static_cast<Eigen::Index>(rows.size());
        ComplexMatrix u(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
          if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)].size()) != n) {
            throw ParseError("circuit JSON: unitary must be square");
          }
          for (Eigen::Index col = 0; col < n; ++col) {
            const auto& z = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            u(r, col) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
          }
        }
        c.unitary(std::move(u), std::move(qubits));
      } else {
        throw ParseError("circuit JSON: unknown gate '" + name + "'");
      }
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("circuit JSON: ") + e.what());
  }
}

std::string QuantumCircuit::to_json_text() const {
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : gates_) {
    switch (g.kind) {
      case GateKind::H: gates.push_back({"H", g.qubits[0]}); break;
      case GateKind::X: gates.push_back({"X", g.qubits[0]}); break;
      case GateKind::T: gates.push_back({"T", g.qubits[0]}); break;
      case GateKind::CNOT: gates.push_back({"CNOT", g.qubits[0], g.qubits[1]}); break;
      case GateKind::Unitary: {
        nlohmann::json rows = nlohmann::json::array();
        for (Eigen::Index r = 0; r < g.matrix->rows(); ++r) {
          nlohmann::json row = nlohmann::json::array();
          for (Eigen::Index c = 0; c < g.matrix->cols(); ++c) {
            row.push_back({(*g.matrix)(r, c).real(), (*g.matrix)(r, c).imag()});
          }
          rows.push_back(std::move(row));
        }
        gates.push_back({"U", g.qubits, std::move(rows)});
        break;
      }
    }
  }
  return nlohmann::json{{"qubits", num_qubits_}, {"gates", std::move(gates)}}.dump();
}

ComplexMatrix gate_matrix(const Gate& g) {
  switch (g.kind) {
    case GateKind::H: return hadamard();
    case GateKind::X: return pauli_x();
    case GateKind::T: return t_gate();
    case GateKind::CNOT: return cnot_matrix();
    case GateKind::Unitary: return *g.matrix;
  }
  throw ContractError("gate_matrix: unknown gate");
}

Statevector run_circuit(const QuantumCircuit& c, const Statevector& s) {
  if (c.num_qubits() != s.num_qubits()) throw ContractError("run_circuit: qubit count mismatch");
  Statevector out = s;
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case GateKind::H: out.apply_single(hadamard(), g.qubits[0]); break;
      case GateKind::X: out.apply_single(pauli_x(), g.qubits[0]); break;
      case GateKind::T: out.apply_single(t_gate(), g.qubits[0]); break;
      case GateKind::CNOT: out.apply_cnot(g.qubits[0], g.qubits[1]); break;
      case GateKind::Unitary: out.apply_dense(*g.matrix, g.qubits); break;
    }
  }
  return out;
}

ComplexMatrix circuit_unitary(const QuantumCircuit& c) {
  const int n = c.num_qubits();
  if (n > 12) throw ResourceError("circuit_unitary: too many qubits for a dense unitary");
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n);
  ComplexMatrix total = ComplexMatrix::Identity(dim, dim);
  for (const auto& g : c.gates()) {
    const ComplexMatrix local = gate_matrix(g);
    const auto k = static_cast<int>(g.qubits.size());
    std::uint64_t mask = 0;
    for (int q : g.qubits) mask |= bit_of(n, q);
    auto sub_index = [&](std::uint64_t full) {
      Eigen::Index s = 0;
      for (int j = 0; j < k; ++j) {
        s = (s << 1) | ((full & bit_of(n, g.qubits[static_cast<std::size_t>(j)])) ? 1 : 0);
      }
      return s;
    };
    // <x|G|y> = local[x_sub, y_sub] when x and y agree off the gate's qubits.
    ComplexMatrix embedded = ComplexMatrix::Zero(dim, dim);
    for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(dim); ++x) {
      for (std::uint64_t y = 0; y < static_cast<std::uint64_t>(dim); ++y) {
        if ((x & ~mask) != (y & ~mask)) continue;
        embedded(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = local(sub_index(x), sub_index(y));
      }
    }
    total = embedded * total;
  }
  return total;
}

ComplexMatrix expm_exact(const ComplexMatrix& a, double evo_time) {
  if (a.rows() != a.cols()) throw ContractError("expm_exact: matrix must be square");
  if (a.size() > 0 && (a - a.adjoint()).cwiseAbs().maxCoeff() > kSymmetryTolerance) {
    throw ContractError("expm_exact: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) throw ContractError("expm_exact: eigensolver failed");
  ComplexVector phases(solver.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, -solver.eigenvalues()(i) * evo_time);
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

ComplexMatrix expm_exact(const DenseMatrix& a, double evo_time) {
  return expm_exact(ComplexMatrix(a.entries.cast<Complex>()), evo_time);
}

double taylor_tail_bound(double norm_times_time, int order) {
  if (order < 0) throw RangeError("taylor_tail_bound: order must be nonnegative");
  const double x = norm_times_time;
  if (x == 0.0) return 0.0;
  // x^(K+1)/(K+1)! via logs to stay finite for large K.
  const double log_term = (order + 1) * std::log(x) - std::lgamma(order + 2.0);
  return std::exp(log_term + x);
}

int taylor_order_for(double norm_times_time, double epsilon) {
  if (epsilon <= 0.0) throw RangeError("taylor_order_for: epsilon must be positive");
  for (int k = 0; k < 10000; ++k) {
    if (taylor_tail_bound(norm_times_time, k) <= epsilon) return k;
  }
  throw ConfigurationError("taylor_order_for: no order below 10000 reaches epsilon");
}

ComplexMatrix expm_taylor(const RowOracleMatrix& m, double evo_time, int order) {
  if (order < 0) throw RangeError("expm_taylor: order must be nonnegative");
  if (m.dim() > dense_cap()) throw ResourceError("expm_taylor: dim exceeds dense cap");
  const auto rows = collect_rows(m);
  double norm = 0.0;
  for (const auto& r : rows) {
    double s = 0.0;
    for (const auto& e : r) s += std::abs(static_cast<double>(e.value));
    norm = std::max(norm, s);
  }
  if (norm * std::abs(evo_time) > std::numbers::pi * (1.0 + 1e-12)) {
    throw ContractError("expm_taylor: ||A|| t exceeds pi");
  }
  const auto n = static_cast<Eigen::Index>(m.dim());
  ComplexMatrix term = ComplexMatrix::Identity(n, n);
  ComplexMatrix sum = term;
  ComplexMatrix next(n, n);
  for (int j = 1; j <= order; ++j) {
    const Complex scale(0.0, -evo_time / j);
    for (Eigen::Index i = 0; i < n; ++i) {
      next.row(i).setZero();
      for (const auto& e : rows[static_cast<std::size_t>(i)]) {
        next.row(i) += static_cast<double>(e.value) * term.row(static_cast<Eigen::Index>(e.index));
      }
    }
    term = scale * next;
    sum += term;
  }
  return sum;
}

double unitarity_error(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

double one_bit_pe(const ComplexMatrix& u, const ComplexVector& psi) {
  if (u.rows() != psi.size()) throw ContractError("one_bit_pe: dimension mismatch");
  if (unitarity_error(u) > 1e-8) throw ContractError("one_bit_pe: U is not unitary");
  if (std::abs(psi.squaredNorm() - 1.0) > kNormTolerance) throw ContractError("one_bit_pe: witness not normalized");
  const Eigen::Index d = psi.size();
  // Control qubit is the most significant: index = control * d + system.
  ComplexVector state = ComplexVector::Zero(2 * d);
  state.head(d) = psi;
  const double r = 1.0 / std::numbers::sqrt2;
  auto hadamard_on_control = [&] {
    const ComplexVector upper = state.head(d);
    const ComplexVector lower = state.tail(d);
    state.head(d) = r * (upper + lower);
    state.tail(d) = r * (upper - lower);
  };
  hadamard_on_control();
  state.tail(d) = u * state.tail(d);
  hadamard_on_control();
  return state.head(d).squaredNorm();
}

double one_bit_pe(const ComplexMatrix& u, const Statevector& psi) { return one_bit_pe(u, psi.amplitudes()); }

double acceptance_probability(const Verifier& v, const Statevector& witness) {
  v.check();
  if (witness.num_qubits() != v.witness_qubits) throw ContractError("acceptance_probability: witness size mismatch");
  const Statevector input = v.ancilla_k > 0 ? witness.tensor(Statevector(v.ancilla_k)) : witness;
  return run_circuit(v.circuit, input).probability_one(v.output_qubit);
}

double acceptance_probability(const Verifier& v, const ComplexMatrix& rho) {
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << v.witness_qubits);
  if (rho.rows() != dim || rho.cols() != dim) throw ContractError("acceptance_probability: density size mismatch");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kSymmetryTolerance) {
    throw ContractError("acceptance_probability: density matrix not Hermitian");
  }
  if (std::abs(rho.trace().real() - 1.0) > kNormTolerance) throw ContractError("acceptance_probability: trace != 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho);
  double p = 0.0;
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double w = solver.eigenvalues()(j);
    if (w < -kPsdTolerance) throw ContractError("acceptance_probability: density matrix not PSD");
    if (std::abs(w) <= 1e-15) continue;
    ComplexVector vec = solver.eigenvectors().col(j);
    vec.normalize();
    p += w * acceptance_probability(v, Statevector::from_amplitudes(std::move(vec)));
  }
  return p;
}

}  // namespace qmaexp
