// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sparse_oracle.hpp
 * @brief Succinctly represented sparse matrices given as row oracles.
 *
 * A RowOracleMatrix never stores its entries. It wraps a deterministic
 * procedure that, for a row index, lists the nonzero entries of that row as
 * exact integers. Dense materialization is only available below a desk-scale
 * cap (QMAEXP_DENSE_CAP, default 2^14).
 */

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "qmaexp/types.hpp"

namespace qmaexp {

struct SparseEntry {
  std::uint64_t index = 0;  // column for rows, row for columns
  std::int64_t value = 0;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

using SparseRow = std::vector<SparseEntry>;
using LineFunction = std::function<SparseRow(std::uint64_t)>;

/// Triplet (row, column, value) for explicit instances.
using Triplet = std::tuple<std::uint64_t, std::uint64_t, std::int64_t>;

class RowOracleMatrix {
 public:
  /// `columns`, when provided, must list the nonzeros of column j as (row, value).
  RowOracleMatrix(std::uint64_t dim, std::uint32_t sparsity_d, std::int64_t entry_bound_k,
                  LineFunction rows, std::optional<std::uint32_t> column_ones_bound = std::nullopt,
                  LineFunction columns = {});

  [[nodiscard]] std::uint64_t dim() const { return dim_; }
  [[nodiscard]] std::uint32_t sparsity() const { return sparsity_d_; }
  [[nodiscard]] std::int64_t entry_bound() const { return entry_bound_k_; }
  [[nodiscard]] std::optional<std::uint32_t> column_ones_bound() const { return column_ones_bound_; }
  [[nodiscard]] bool has_column_oracle() const { return static_cast<bool>(columns_); }

  /// Nonzero entries of row i, sorted by column. Throws RangeError for i >= dim
  /// and ContractError if the oracle breaks its declared sparsity or entry bound.
  [[nodiscard]] SparseRow row(std::uint64_t i) const;

  /// Nonzero entries of column j as (row, value). Requires a column oracle.
  [[nodiscard]] SparseRow column(std::uint64_t j) const;

 private:
  std::uint64_t dim_;
  std::uint32_t sparsity_d_;
  std::int64_t entry_bound_k_;
  std::optional<std::uint32_t> column_ones_bound_;
  LineFunction rows_;
  LineFunction columns_;
};

/// Current dense materialization cap; QMAEXP_DENSE_CAP overrides the 2^14 default.
[[nodiscard]] std::uint64_t dense_cap();

[[nodiscard]] RowOracleMatrix identity_oracle(std::uint64_t dim);

/// Oracle over an explicit entry list. Duplicate (i, j) pairs are summed.
[[nodiscard]] RowOracleMatrix explicit_oracle(std::uint64_t dim, std::span<const Triplet> entries);

/// Oracle reproducing an integer dense matrix exactly.
[[nodiscard]] RowOracleMatrix oracle_from_dense(const IntMatrix& a);

/// Lower-bidiagonal path block: row 0 is (0,1); row i > 0 is (i-1,1),(i,1).
[[nodiscard]] RowOracleMatrix path_adjacency_oracle(std::uint64_t ell);

/// Cycle block: row 0 is (ell-1,1); rows 1..ell-2 carry (i-1,1),(i,1); row ell-1 is (ell-2,1).
[[nodiscard]] RowOracleMatrix cycle_adjacency_oracle(std::uint64_t ell);

/// Every row, in index order. Subject to the dense cap times the sparsity.
[[nodiscard]] std::vector<SparseRow> collect_rows(const RowOracleMatrix& m);

[[nodiscard]] IntMatrix materialize_integer(const RowOracleMatrix& m);

/// Dense double materialization with the symmetric flag set when exact.
/// The psd flag is left unset; see spectral::verify_psd.
[[nodiscard]] DenseMatrix materialize(const RowOracleMatrix& m);

/// entry_bound_k * sparsity_d, an upper bound on the spectral norm.
[[nodiscard]] double norm_bound(const RowOracleMatrix& m);

/// Largest absolute row sum, computed by scanning every row.
[[nodiscard]] double row_sum_norm(const RowOracleMatrix& m);

/// Row oracle for A^T A. Requires a declared column_ones_bound <= 2 and 0/1 entries.
[[nodiscard]] RowOracleMatrix ata_oracle(const RowOracleMatrix& m);

}  // namespace qmaexp
