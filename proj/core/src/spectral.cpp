// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

#include "qmaexp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "qmaexp/errors.hpp"

namespace qmaexp {

namespace {

using BigInt = boost::multiprecision::cpp_int;

void require_square(const IntMatrix& a, const char* who) {
  if (a.rows() != a.cols()) throw ContractError(std::string(who) + ": matrix must be square");
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw RangeError("det_cycle_cover: overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw RangeError("det_cycle_cover: overflow");
  return r;
}

struct CoverSearch {
  const IntMatrix& a;
  Eigen::Index n;
  std::vector<Eigen::Index> succ;
  std::vector<char> used;
  std::int64_t total = 0;

  int even_cycles() const {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    int even = 0;
    for (Eigen::Index start = 0; start < n; ++start) {
      if (seen[static_cast<std::size_t>(start)]) continue;
      Eigen::Index len = 0;
      for (Eigen::Index v = start; !seen[static_cast<std::size_t>(v)]; v = succ[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++len;
      }
      if (len % 2 == 0) ++even;
    }
    return even;
  }

  void extend(Eigen::Index i, std::int64_t weight) {
    if (i == n) {
      total = checked_add(total, even_cycles() % 2 == 0 ? weight : -weight);
      return;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)] || a(i, j) == 0) continue;
      used[static_cast<std::size_t>(j)] = 1;
      succ[static_cast<std::size_t>(i)] = j;
      extend(i + 1, checked_mul(weight, a(i, j)));
      used[static_cast<std::size_t>(j)] = 0;
    }
  }
};

// Bareiss elimination; every intermediate is a minor of `m`, so divisions are exact.
BigInt bareiss(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

void require_symmetric(const RealMatrix& a, const char* who) {
  if (a.rows() != a.cols()) throw ContractError(std::string(who) + ": matrix must be square");
  if (a.size() > 0 && (a - a.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance) {
    throw ContractError(std::string(who) + ": matrix is not symmetric");
  }
}

}  // namespace

std::int64_t det_cycle_cover(const IntMatrix& a) {
  require_square(a, "det_cycle_cover");
  if (a.rows() > kCycleCoverCap) {
    throw ResourceError("det_cycle_cover: dim " + std::to_string(a.rows()) + " above brute-force cap");
  }
  CoverSearch search{a, a.rows(), std::vector<Eigen::Index>(static_cast<std::size_t>(a.rows())),
                     std::vector<char>(static_cast<std::size_t>(a.rows()), 0)};
  search.extend(0, 1);
  return search.total;
}

std::int64_t det_exact(const IntMatrix& a) {
  require_square(a, "det_exact");
  const auto n = static_cast<std::size_t>(a.rows());
  if (n == 0) return 1;

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0) {
        parent[find_root(parent, i)] = find_root(parent, j);
      }
    }
  }
  std::vector<std::vector<std::size_t>> blocks(n);
  for (std::size_t i = 0; i < n; ++i) blocks[find_root(parent, i)].push_back(i);

  // The same permutation is applied to rows and columns, so the determinant
  // is the product of the block determinants.
  BigInt det = 1;
  for (const auto& block : blocks) {
    if (block.empty()) continue;
    std::vector<std::vector<BigInt>> m(block.size(), std::vector<BigInt>(block.size()));
    for (std::size_t r = 0; r < block.size(); ++r) {
      for (std::size_t c = 0; c < block.size(); ++c) {
        m[r][c] = a(static_cast<Eigen::Index>(block[r]), static_cast<Eigen::Index>(block[c]));
      }
    }
    det *= bareiss(std::move(m));
    if (det == 0) return 0;
  }
  if (det > std::numeric_limits<std::int64_t>::max() || det < std::numeric_limits<std::int64_t>::min()) {
    throw RangeError("det_exact: determinant does not fit in 64 bits");
  }
  return det.convert_to<std::int64_t>();
}

double chebyshev_q(int n, double x) {
  if (n < 0) throw RangeError("chebyshev_q: n must be nonnegative");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int i = 2; i <= n; ++i) {
    const double next = x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double char_poly_p(int ell, double lambda) {
  if (ell < 1) throw RangeError("char_poly_p: ell must be >= 1");
  return chebyshev_q(ell, 2.0 - lambda) - chebyshev_q(ell - 1, 2.0 - lambda);
}

StructuredBlock structured_matrix(BlockKind kind, std::uint64_t ell) {
  StructuredBlock block{kind, ell, {}};
  const auto n = static_cast<Eigen::Index>(ell);
  if (kind == BlockKind::Path) {
    if (ell < 1) throw RangeError("structured_matrix: path needs ell >= 1");
    block.matrix = IntMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      block.matrix(i, i) = (i + 1 == n) ? 1 : 2;
      if (i + 1 < n) block.matrix(i, i + 1) = block.matrix(i + 1, i) = 1;
    }
    return block;
  }
  if (ell < 3) throw RangeError("structured_matrix: cycle needs ell >= 3");
  block.matrix = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    block.matrix(i, i) = (i == 0) ? 1 : 2;
    if (i + 2 < n) block.matrix(i, i + 1) = block.matrix(i + 1, i) = 1;
  }
  block.matrix(n - 1, n - 1) = 1;
  return block;
}

std::vector<double> closed_form_eigenvalues(std::uint64_t ell, AngleConvention convention) {
  if (ell < 1) throw RangeError("closed_form_eigenvalues: ell must be >= 1");
  std::vector<double> out;
  out.reserve(ell);
  const double denom = 2.0 * static_cast<double>(ell) + 1.0;
  for (std::uint64_t k = 1; k <= ell; ++k) {
    const double numer = convention == AngleConvention::Corrected ? 2.0 * static_cast<double>(k) - 1.0
                                                                  : 2.0 * static_cast<double>(k);
    const double half = numer * std::numbers::pi / denom / 2.0;
    out.push_back(4.0 * std::sin(half) * std::sin(half));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> cycle_closed_form_eigenvalues(std::uint64_t ell) {
  if (ell < 3) throw RangeError("cycle_closed_form_eigenvalues: ell must be >= 3");
  auto out = closed_form_eigenvalues(ell - 1);
  out.push_back(1.0);
  std::sort(out.begin(), out.end());
  return out;
}

RealVector symmetric_eigenvalues(const DenseMatrix& a) {
  require_symmetric(a.entries, "symmetric_eigenvalues");
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(a.entries, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ContractError("symmetric_eigenvalues: eigensolver failed");
  return solver.eigenvalues();
}

EigenPairs symmetric_eigenpairs(const DenseMatrix& a) {
  require_symmetric(a.entries, "symmetric_eigenpairs");
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(a.entries);
  if (solver.info() != Eigen::Success) throw ContractError("symmetric_eigenpairs: eigensolver failed");
  return EigenPairs{solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const DenseMatrix& a) {
  const RealVector v = symmetric_eigenvalues(a);
  if (v.size() == 0) throw ContractError("min_eigenvalue: empty matrix");
  return v(0);
}

RealVector hermitian_eigenvalues(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw ContractError("hermitian_eigenvalues: matrix must be square");
  if (h.size() > 0 && (h - h.adjoint()).cwiseAbs().maxCoeff() > kSymmetryTolerance) {
    throw ContractError("hermitian_eigenvalues: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ContractError("hermitian_eigenvalues: eigensolver failed");
  return solver.eigenvalues();
}

double min_eigenvalue(const ComplexMatrix& h) {
  const RealVector v = hermitian_eigenvalues(h);
  if (v.size() == 0) throw ContractError("min_eigenvalue: empty matrix");
  return v(0);
}

bool verify_psd(DenseMatrix& a) {
  a.symmetric = a.entries.rows() == a.entries.cols() &&
                (a.entries.size() == 0 || (a.entries - a.entries.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTolerance);
  a.psd = a.symmetric && min_eigenvalue(a) >= -kPsdTolerance;
  return a.psd;
}

SpectrumReport spectrum_report(const DenseMatrix& a, std::optional<std::vector<double>> closed_form) {
  const RealVector v = symmetric_eigenvalues(a);
  SpectrumReport report;
  report.eigenvalues.assign(v.data(), v.data() + v.size());
  report.min_eig = report.eigenvalues.empty() ? 0.0 : report.eigenvalues.front();
  if (closed_form) {
    if (closed_form->size() != report.eigenvalues.size()) {
      throw ContractError("spectrum_report: closed form has the wrong length");
    }
    std::sort(closed_form->begin(), closed_form->end());
    for (std::size_t i = 0; i < closed_form->size(); ++i) {
      report.max_abs_discrepancy =
          std::max(report.max_abs_discrepancy, std::abs((*closed_form)[i] - report.eigenvalues[i]));
    }
    report.closed_form = std::move(closed_form);
  }
  return report;
}

Tridiagonal tridiagonalize(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw ContractError("tridiagonalize: matrix must be square");
  Tridiagonal t;
  if (h.rows() == 1) {
    t.diagonal = RealVector::Constant(1, h(0, 0).real());
    t.off_diagonal = RealVector(0);
    return t;
  }
  Eigen::Tridiagonalization<ComplexMatrix> tri(h);
  t.diagonal = tri.diagonal();
  t.off_diagonal = tri.subDiagonal();
  return t;
}

Tridiagonal path_tridiagonal(std::uint64_t ell) {
  if (ell < 1) throw RangeError("path_tridiagonal: ell must be >= 1");
  const auto n = static_cast<Eigen::Index>(ell);
  Tridiagonal t;
  t.diagonal = RealVector::Constant(n, 2.0);
  t.diagonal(n - 1) = 1.0;
  t.off_diagonal = RealVector::Ones(n - 1);
  return t;
}

RealVector tridiagonal_eigenvalues(const Tridiagonal& t) {
  const Eigen::Index n = t.diagonal.size();
  if (t.off_diagonal.size() != std::max<Eigen::Index>(n - 1, 0)) throw ContractError("tridiagonal: size mismatch");
  if (n == 1) return t.diagonal;
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver;
  solver.computeFromTridiagonal(t.diagonal, t.off_diagonal, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ContractError("tridiagonal_eigenvalues: solver failed");
  return solver.eigenvalues();
}

std::size_t count_eigenvalues_below(const Tridiagonal& t, double mu) {
  // Sign changes of the LDL^T pivots of T - mu I.
  const Eigen::Index n = t.diagonal.size();
  const double tiny = std::numeric_limits<double>::min();
  std::size_t count = 0;
  double pivot = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double off = i == 0 ? 0.0 : t.off_diagonal(i - 1);
    pivot = t.diagonal(i) - mu - (i == 0 ? 0.0 : off * off / pivot);
    if (pivot == 0.0) pivot = -tiny;
    if (pivot < 0.0) ++count;
  }
  return count;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ContractError("loglog_slope: need >= 2 paired samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace qmaexp
