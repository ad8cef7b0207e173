#pragma once

#include <optional>
#include <vector>

#include "pgz/polynomial.hpp"

namespace pgz {

template <class F>
using Matrix = std::vector<std::vector<F>>;

// Row-reduces m in place to reduced echelon form; returns pivot columns.
template <class F>
std::vector<std::size_t> row_reduce(Matrix<F>& m, std::size_t ncols) {
  using O = CoeffOps<F>;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && O::is_zero(m[p][c])) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    F inv = O::inverse(m[r][c]);
    for (std::size_t k = c; k < ncols; ++k)
      if (!O::is_zero(m[r][k])) m[r][k] = m[r][k] * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || O::is_zero(m[i][c])) continue;
      F f = m[i][c];
      for (std::size_t k = c; k < ncols; ++k)
        if (!O::is_zero(m[r][k])) m[i][k] = m[i][k] - f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

// Basis of {v : m v = 0}.
template <class F>
Matrix<F> nullspace(Matrix<F> m, std::size_t ncols) {
  using O = CoeffOps<F>;
  auto pivots = row_reduce(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  Matrix<F> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(ncols, O::zero());
    v[free] = O::one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solves a x = b; nullopt if inconsistent. Free variables are set to zero.
template <class F>
std::optional<std::vector<F>> solve_linear(const Matrix<F>& a, const std::vector<F>& b, std::size_t ncols) {
  using O = CoeffOps<F>;
  Matrix<F> m = a;
  for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(b[i]);
  auto pivots = row_reduce(m, ncols + 1);
  std::vector<F> x(ncols, O::zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == ncols) return std::nullopt;
    x[pivots[r]] = m[r][ncols];
  }
  return x;
}

template <class F>
F determinant(Matrix<F> m) {
  using O = CoeffOps<F>;
  std::size_t n = m.size();
  F det = O::one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && O::is_zero(m[p][c])) ++p;
    if (p == n) return O::zero();
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det = det * m[c][c];
    F inv = O::inverse(m[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (O::is_zero(m[i][c])) continue;
      F f = m[i][c] * inv;
      for (std::size_t k = c; k < n; ++k) m[i][k] = m[i][k] - f * m[c][k];
    }
  }
  return det;
}

template <class F>
std::optional<Matrix<F>> inverse_matrix(const Matrix<F>& a) {
  using O = CoeffOps<F>;
  std::size_t n = a.size();
  Matrix<F> m = a;
  for (std::size_t i = 0; i < n; ++i) {
    m[i].resize(2 * n, O::zero());
    m[i][n + i] = O::one();
  }
  auto pivots = row_reduce(m, 2 * n);
  if (pivots.size() < n || pivots[n - 1] >= n) return std::nullopt;
  Matrix<F> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i].assign(m[i].begin() + static_cast<std::ptrdiff_t>(n), m[i].end());
  return inv;
}

}  // namespace pgz
