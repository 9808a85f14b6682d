// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

// Extended-precision measurement of the truncated Taylor remainder.

#include <algorithm>
#include <map>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "qmaexp/errors.hpp"
#include "qmaexp/simulator.hpp"
#include "qmaexp/types.hpp"

namespace qmaexp {

namespace {

using Real50 = boost::multiprecision::cpp_bin_float_50;
using Matrix50 = Eigen::Matrix<Real50, Eigen::Dynamic, Eigen::Dynamic>;

constexpr std::uint64_t kExtendedPrecisionCap = 256;

}  // namespace

std::vector<double> taylor_truncation_errors(const RowOracleMatrix& m, double evo_time, std::span<const int> orders) {
  if (orders.empty()) return {};
  if (m.dim() > kExtendedPrecisionCap) throw ResourceError("taylor_truncation_errors: dim above extended-precision cap");
  const auto rows = collect_rows(m);
  for (std::uint64_t i = 0; i < m.dim(); ++i) {
    for (const auto& e : rows[i]) {
      const bool mirrored = std::any_of(rows[e.index].begin(), rows[e.index].end(),
                                        [&](const SparseEntry& b) { return b.index == i && b.value == e.value; });
      if (!mirrored) throw ContractError("taylor_truncation_errors: matrix is not symmetric");
    }
  }
  const int max_order = *std::max_element(orders.begin(), orders.end());
  if (*std::min_element(orders.begin(), orders.end()) < 0) throw RangeError("taylor_truncation_errors: negative order");
  const double x = row_sum_norm(m) * std::abs(evo_time);
  const int ref_order = std::max(max_order + 20, taylor_order_for(x, 1e-60));

  const auto n = static_cast<Eigen::Index>(m.dim());
  const Real50 t(evo_time);

  // Real and imaginary parts of the partial sums, snapshotted at each requested order.
  Matrix50 term = Matrix50::Identity(n, n);
  Matrix50 sum_re = term;
  Matrix50 sum_im = Matrix50::Zero(n, n);
  std::map<int, std::pair<Matrix50, Matrix50>> snapshots;
  auto snapshot = [&](int j) {
    if (std::find(orders.begin(), orders.end(), j) != orders.end()) snapshots[j] = {sum_re, sum_im};
  };
  snapshot(0);
  Matrix50 next(n, n);
  for (int j = 1; j <= ref_order; ++j) {
    next.setZero();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (const auto& e : rows[static_cast<std::size_t>(i)]) {
        next.row(i) += Real50(e.value) * term.row(static_cast<Eigen::Index>(e.index));
      }
    }
    term = next * (t / j);
    // (-i)^j cycles through 1, -i, -1, i.
    switch (j % 4) {
      case 0: sum_re += term; break;
      case 1: sum_im -= term; break;
      case 2: sum_re -= term; break;
      case 3: sum_im += term; break;
    }
    snapshot(j);
  }

  // D is a polynomial in symmetric A, so ||D|| = max_j ||D v_j|| over the
  // eigenvectors of A. Double-precision eigenvectors only perturb this by a
  // relative 1e-15, while D itself is formed in 50-digit arithmetic.
  RealMatrix dense = RealMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (const auto& e : rows[static_cast<std::size_t>(i)]) dense(i, static_cast<Eigen::Index>(e.index)) += static_cast<double>(e.value);
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(dense);
  if (solver.info() != Eigen::Success) throw ContractError("taylor_truncation_errors: eigensolver failed");
  const Matrix50 vecs = solver.eigenvectors().cast<Real50>();

  std::vector<double> errors;
  errors.reserve(orders.size());
  for (int k : orders) {
    const auto& [re, im] = snapshots.at(k);
    const Matrix50 d_re = (sum_re - re) * vecs;
    const Matrix50 d_im = (sum_im - im) * vecs;
    Real50 top = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      Real50 sq = 0;
      for (Eigen::Index i = 0; i < n; ++i) sq += d_re(i, j) * d_re(i, j) + d_im(i, j) * d_im(i, j);
      if (sq > top) top = sq;
    }
    errors.push_back(static_cast<double>(boost::multiprecision::sqrt(top)));
  }
  return errors;
}

}  // namespace qmaexp
