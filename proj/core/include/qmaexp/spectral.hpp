// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spectral.hpp
 * @brief Exact determinants, the Chebyshev description of the path and cycle
 * Gram blocks, and the dense symmetric eigensolver used as ground truth.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qmaexp/types.hpp"

namespace qmaexp {

/// Largest dimension accepted by the brute-force cycle-cover expansion.
inline constexpr Eigen::Index kCycleCoverCap = 10;

/// Sum over cycle covers of (product of edge weights) * (-1)^(number of even cycles).
/// Throws ResourceError above kCycleCoverCap.
[[nodiscard]] std::int64_t det_cycle_cover(const IntMatrix& a);

/// Exact determinant by fraction-free elimination over arbitrary-precision
/// integers, applied independently to each connected block of the sparsity
/// pattern. Throws RangeError if the result does not fit in 64 bits.
[[nodiscard]] std::int64_t det_exact(const IntMatrix& a);

/// q_0 = 1, q_1 = x, q_n = x q_{n-1} - q_{n-2}; equals U_n(x / 2).
[[nodiscard]] double chebyshev_q(int n, double x);

/// Characteristic polynomial of the path Gram block: q_ell(2 - lambda) - q_{ell-1}(2 - lambda).
[[nodiscard]] double char_poly_p(int ell, double lambda);

enum class BlockKind { Path, Cycle };

struct StructuredBlock {
  BlockKind kind = BlockKind::Path;
  std::uint64_t ell = 0;
  IntMatrix matrix;  // Gram matrix A^T A of the block's adjacency matrix
};

/// Path: tridiagonal, diagonal (2, ..., 2, 1), off-diagonal 1 (ell >= 1).
/// Cycle: diagonal (1, 2, ..., 2, 1) with the last row and column decoupled (ell >= 3).
[[nodiscard]] StructuredBlock structured_matrix(BlockKind kind, std::uint64_t ell);

enum class AngleConvention {
  Corrected,  // zeros at (2k - 1) pi / (2 ell + 1)
  AsPrinted,  // zeros at 2k pi / (2 ell + 1); disagrees with the eigensolver
};

/// {2(1 - cos(angle_k)) : k = 1..ell}, ascending.
[[nodiscard]] std::vector<double> closed_form_eigenvalues(std::uint64_t ell,
                                                          AngleConvention convention = AngleConvention::Corrected);

/// Spectrum of the cycle block: the path block of size ell - 1 plus the decoupled 1.
[[nodiscard]] std::vector<double> cycle_closed_form_eigenvalues(std::uint64_t ell);

struct EigenPairs {
  RealVector values;   // ascending
  RealMatrix vectors;  // column j belongs to values[j]
};

/// All eigenvalues, ascending. ContractError if not symmetric to kSymmetryTolerance.
[[nodiscard]] RealVector symmetric_eigenvalues(const DenseMatrix& a);
[[nodiscard]] EigenPairs symmetric_eigenpairs(const DenseMatrix& a);
[[nodiscard]] double min_eigenvalue(const DenseMatrix& a);

/// Hermitian variants for complex Hamiltonians.
[[nodiscard]] RealVector hermitian_eigenvalues(const ComplexMatrix& h);
[[nodiscard]] double min_eigenvalue(const ComplexMatrix& h);

/// Sets a.symmetric and a.psd from exact checks; returns a.psd.
bool verify_psd(DenseMatrix& a);

struct SpectrumReport {
  std::vector<double> eigenvalues;
  double min_eig = 0;
  std::optional<std::vector<double>> closed_form;
  double max_abs_discrepancy = 0;
};

[[nodiscard]] SpectrumReport spectrum_report(const DenseMatrix& a,
                                             std::optional<std::vector<double>> closed_form = std::nullopt);

/// Real symmetric tridiagonal form (diagonal, off-diagonal) of a Hermitian matrix.
struct Tridiagonal {
  RealVector diagonal;
  RealVector off_diagonal;  // size n - 1
};

[[nodiscard]] Tridiagonal tridiagonalize(const ComplexMatrix& h);

/// Tridiagonal form of the path block, built directly without a dense matrix.
[[nodiscard]] Tridiagonal path_tridiagonal(std::uint64_t ell);

/// All eigenvalues of a symmetric tridiagonal matrix, ascending (O(n^2)).
[[nodiscard]] RealVector tridiagonal_eigenvalues(const Tridiagonal& t);

/// Sturm count: number of eigenvalues strictly below mu.
[[nodiscard]] std::size_t count_eigenvalues_below(const Tridiagonal& t, double mu);

/// Least-squares slope of log(y) against log(x).
[[nodiscard]] double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace qmaexp
