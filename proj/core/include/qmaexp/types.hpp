// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace qmaexp {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Dense real matrix plus the structural flags that have been verified on it.
struct DenseMatrix {
  RealMatrix entries;
  bool symmetric = false;
  bool psd = false;

  [[nodiscard]] Eigen::Index dim() const { return entries.rows(); }
};

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;

}  // namespace qmaexp
