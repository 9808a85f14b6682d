// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmaexp/sparse_oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "qmaexp/errors.hpp"

namespace qmaexp {

namespace {

constexpr std::uint64_t kDefaultDenseCap = std::uint64_t{1} << 14;

void sort_line(SparseRow& line) {
  std::sort(line.begin(), line.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
}

// Rows plus their transpose, shared by explicit oracles.
struct ExplicitStore {
  std::vector<SparseRow> rows;
  std::vector<SparseRow> columns;
};

RowOracleMatrix oracle_from_store(std::uint64_t dim, std::shared_ptr<const ExplicitStore> store) {
  std::uint32_t d = 1;
  std::int64_t k = 1;
  std::uint32_t ones = 0;
  for (const auto& r : store->rows) {
    d = std::max<std::uint32_t>(d, static_cast<std::uint32_t>(r.size()));
    for (const auto& e : r) k = std::max<std::int64_t>(k, e.value < 0 ? -e.value : e.value);
  }
  for (const auto& c : store->columns) {
    auto n = static_cast<std::uint32_t>(
        std::count_if(c.begin(), c.end(), [](const SparseEntry& e) { return e.value == 1; }));
    ones = std::max(ones, n);
  }
  return RowOracleMatrix(
      dim, d, k, [store](std::uint64_t i) { return store->rows[i]; }, ones,
      [store](std::uint64_t j) { return store->columns[j]; });
}

}  // namespace

RowOracleMatrix::RowOracleMatrix(std::uint64_t dim, std::uint32_t sparsity_d, std::int64_t entry_bound_k,
                                 LineFunction rows, std::optional<std::uint32_t> column_ones_bound,
                                 LineFunction columns)
    : dim_(dim),
      sparsity_d_(sparsity_d),
      entry_bound_k_(entry_bound_k),
      column_ones_bound_(column_ones_bound),
      rows_(std::move(rows)),
      columns_(std::move(columns)) {
  if (dim_ == 0) throw RangeError("RowOracleMatrix: dim must be positive");
  if (sparsity_d_ == 0) throw RangeError("RowOracleMatrix: sparsity_d must be positive");
  if (entry_bound_k_ <= 0) throw RangeError("RowOracleMatrix: entry_bound_k must be positive");
  if (!rows_) throw ContractError("RowOracleMatrix: missing row function");
}

SparseRow RowOracleMatrix::row(std::uint64_t i) const {
  if (i >= dim_) {
    throw RangeError("row index " + std::to_string(i) + " out of range for dim " + std::to_string(dim_));
  }
  SparseRow r = rows_(i);
  sort_line(r);
  if (r.size() > sparsity_d_) {
    throw ContractError("row " + std::to_string(i) + " has " + std::to_string(r.size()) +
                        " entries, declared sparsity " + std::to_string(sparsity_d_));
  }
  for (const auto& e : r) {
    if (e.index >= dim_) throw ContractError("row " + std::to_string(i) + " has column out of range");
    if (e.value > entry_bound_k_ || -e.value > entry_bound_k_) {
      throw ContractError("row " + std::to_string(i) + " exceeds declared entry bound");
    }
  }
  return r;
}

SparseRow RowOracleMatrix::column(std::uint64_t j) const {
  if (!columns_) throw ContractError("RowOracleMatrix: no column oracle");
  if (j >= dim_) throw RangeError("column index " + std::to_string(j) + " out of range");
  SparseRow c = columns_(j);
  sort_line(c);
  return c;
}

std::uint64_t dense_cap() {
  if (const char* env = std::getenv("QMAEXP_DENSE_CAP"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultDenseCap;
}

RowOracleMatrix identity_oracle(std::uint64_t dim) {
  auto unit = [](std::uint64_t i) { return SparseRow{{i, 1}}; };
  return RowOracleMatrix(dim, 1, 1, unit, 1, unit);
}

RowOracleMatrix explicit_oracle(std::uint64_t dim, std::span<const Triplet> entries) {
  if (dim == 0) throw RangeError("explicit_oracle: dim must be positive");
  std::vector<std::map<std::uint64_t, std::int64_t>> acc(dim);
  for (const auto& [i, j, v] : entries) {
    if (i >= dim || j >= dim) throw RangeError("explicit_oracle: entry index out of range");
    acc[i][j] += v;
  }
  auto store = std::make_shared<ExplicitStore>();
  store->rows.resize(dim);
  store->columns.resize(dim);
  for (std::uint64_t i = 0; i < dim; ++i) {
    for (const auto& [j, v] : acc[i]) {
      if (v == 0) continue;
      store->rows[i].push_back({j, v});
      store->columns[j].push_back({i, v});
    }
  }
  return oracle_from_store(dim, std::move(store));
}

RowOracleMatrix oracle_from_dense(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw ContractError("oracle_from_dense: matrix must be square");
  std::vector<Triplet> t;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0) t.emplace_back(i, j, a(i, j));
    }
  }
  return explicit_oracle(static_cast<std::uint64_t>(a.rows()), t);
}

RowOracleMatrix path_adjacency_oracle(std::uint64_t ell) {
  if (ell == 0) throw RangeError("path_adjacency_oracle: ell must be >= 1");
  auto rows = [](std::uint64_t i) {
    if (i == 0) return SparseRow{{0, 1}};
    return SparseRow{{i - 1, 1}, {i, 1}};
  };
  auto cols = [ell](std::uint64_t j) {
    if (j + 1 == ell) return SparseRow{{j, 1}};
    return SparseRow{{j, 1}, {j + 1, 1}};
  };
  return RowOracleMatrix(ell, ell == 1 ? 1 : 2, 1, rows, ell == 1 ? 1 : 2, cols);
}

RowOracleMatrix cycle_adjacency_oracle(std::uint64_t ell) {
  if (ell < 3) throw RangeError("cycle_adjacency_oracle: ell must be >= 3");
  auto rows = [ell](std::uint64_t i) {
    if (i == 0) return SparseRow{{ell - 1, 1}};
    if (i + 1 == ell) return SparseRow{{ell - 2, 1}};
    return SparseRow{{i - 1, 1}, {i, 1}};
  };
  auto cols = [ell](std::uint64_t j) {
    if (j + 1 == ell) return SparseRow{{0, 1}};
    if (j == 0) return SparseRow{{1, 1}};
    if (j + 2 == ell) return SparseRow{{j, 1}, {j + 1, 1}};
    return SparseRow{{j + 1, 1}, {j, 1}};
  };
  return RowOracleMatrix(ell, 2, 1, rows, 2, cols);
}

std::vector<SparseRow> collect_rows(const RowOracleMatrix& m) {
  if (m.dim() > dense_cap() * 64) {
    throw ResourceError("collect_rows: dim " + std::to_string(m.dim()) + " above row-scan cap");
  }
  std::vector<SparseRow> rows(m.dim());
  for (std::uint64_t i = 0; i < m.dim(); ++i) rows[i] = m.row(i);
  return rows;
}

IntMatrix materialize_integer(const RowOracleMatrix& m) {
  if (m.dim() > dense_cap()) {
    throw ResourceError("materialize: dim " + std::to_string(m.dim()) + " exceeds dense cap " +
                        std::to_string(dense_cap()));
  }
  const auto n = static_cast<Eigen::Index>(m.dim());
  IntMatrix a = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (const auto& e : m.row(static_cast<std::uint64_t>(i))) {
      a(i, static_cast<Eigen::Index>(e.index)) += e.value;
    }
  }
  if (const auto bound = m.column_ones_bound()) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto ones = (a.col(j).array() == 1).count();
      if (ones > static_cast<Eigen::Index>(*bound)) {
        throw ContractError("materialize: column " + std::to_string(j) +
                            " violates declared column_ones_bound");
      }
    }
  }
  return a;
}

DenseMatrix materialize(const RowOracleMatrix& m) {
  const IntMatrix a = materialize_integer(m);
  DenseMatrix out;
  out.entries = a.cast<double>();
  out.symmetric = (a == a.transpose());
  return out;
}

double norm_bound(const RowOracleMatrix& m) {
  return static_cast<double>(m.entry_bound()) * static_cast<double>(m.sparsity());
}

double row_sum_norm(const RowOracleMatrix& m) {
  std::int64_t best = 0;
  for (std::uint64_t i = 0; i < m.dim(); ++i) {
    std::int64_t s = 0;
    for (const auto& e : m.row(i)) s += e.value < 0 ? -e.value : e.value;
    best = std::max(best, s);
  }
  return static_cast<double>(best);
}

RowOracleMatrix ata_oracle(const RowOracleMatrix& m) {
  const auto ones = m.column_ones_bound();
  if (!ones || *ones > 2) {
    throw ContractError("ata_oracle: requires a declared column_ones_bound <= 2");
  }
  if (m.entry_bound() != 1) throw ContractError("ata_oracle: requires entries in {0,1}");

  // Column access: the oracle's own column procedure, or a transpose built by one scan.
  LineFunction column_of;
  if (m.has_column_oracle()) {
    column_of = [m](std::uint64_t j) { return m.column(j); };
  } else {
    auto transposed = std::make_shared<std::vector<SparseRow>>(m.dim());
    for (std::uint64_t i = 0; i < m.dim(); ++i) {
      for (const auto& e : m.row(i)) (*transposed)[e.index].push_back({i, e.value});
    }
    column_of = [transposed](std::uint64_t j) { return (*transposed)[j]; };
  }

  const std::uint32_t c = *ones;
  auto product_row = [m, column_of, c](std::uint64_t i) {
    std::map<std::uint64_t, std::int64_t> acc;
    const SparseRow col = column_of(i);
    std::uint32_t seen = 0;
    for (const auto& [r, v_ri] : col) {
      if (v_ri != 1) throw ContractError("ata_oracle: entry outside {0,1}");
      if (++seen > c) throw ContractError("ata_oracle: column exceeds column_ones_bound");
      for (const auto& [j, v_rj] : m.row(r)) {
        if (v_rj != 1) throw ContractError("ata_oracle: entry outside {0,1}");
        acc[j] += 1;
      }
    }
    SparseRow out;
    out.reserve(acc.size());
    for (const auto& [j, v] : acc) out.push_back({j, v});
    return out;
  };
  const std::uint32_t d = std::max<std::uint32_t>(1, m.sparsity() * std::max<std::uint32_t>(c, 1));
  return RowOracleMatrix(m.dim(), d, std::max<std::int64_t>(c, 1), product_row, std::nullopt, product_row);
}

}  // namespace qmaexp
