#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "liecurv/error.hpp"
#include "liecurv/rational.hpp"

namespace liecurv {

template <typename T>
using Vec = std::vector<T>;
template <typename T>
using Mat = std::vector<std::vector<T>>;

using QVec = Vec<Rational>;
using QMat = Mat<Rational>;

template <typename T>
Mat<T> identity_matrix(std::size_t n) {
  Mat<T> m(n, Vec<T>(n, T(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = T(1);
  return m;
}

template <typename T>
Vec<T> mat_vec(const Mat<T>& a, const Vec<T>& x) {
  Vec<T> y(a.size(), T(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

template <typename T>
Mat<T> mat_mul(const Mat<T>& a, const Mat<T>& b) {
  std::size_t n = a.size(), m = b[0].size(), k = b.size();
  Mat<T> c(n, Vec<T>(m, T(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < k; ++p) {
      if (a[i][p] == T(0)) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][p] * b[p][j];
    }
  return c;
}

template <typename T>
T dot(const Vec<T>& x, const Vec<T>& y) {
  T s(0);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

/// Reduced row echelon form in place; returns the rank. Exact for Rational.
template <typename T>
std::size_t rref(Mat<T>& a) {
  if (a.empty()) return 0;
  std::size_t rows = a.size(), cols = a[0].size(), rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == T(0)) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    T inv = T(1) / a[rank][col];
    for (std::size_t j = col; j < cols; ++j) a[rank][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][col] == T(0)) continue;
      T f = a[i][col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

template <typename T>
std::size_t rank_of(Mat<T> a) {
  return rref(a);
}

/// Basis of { x : A x = 0 }, one vector per free column.
template <typename T>
Mat<T> kernel_basis(Mat<T> a) {
  if (a.empty()) return {};
  std::size_t cols = a[0].size();
  std::size_t rank = rref(a);
  std::vector<std::size_t> pivot_col;
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t r = 0, c = 0; r < rank; ++r) {
    while (c < cols && a[r][c] == T(0)) ++c;
    pivot_col.push_back(c);
    is_pivot[c] = true;
  }
  Mat<T> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec<T> v(cols, T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < pivot_col.size(); ++r)
      v[pivot_col[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

template <typename T>
Mat<T> inverse(const Mat<T>& a) {
  std::size_t n = a.size();
  Mat<T> aug(n, Vec<T>(2 * n, T(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = T(1);
  }
  if (rref(aug) != n) throw ConstructionError("matrix is singular");
  Mat<T> inv(n, Vec<T>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

/// Solves A x = b by Gaussian elimination with partial pivoting (size is
/// small everywhere this is used).
inline std::vector<double> solve_dense(Mat<double> a, std::vector<double> b) {
  std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(a[i][col]) > std::abs(a[best][col])) best = i;
    if (a[best][col] == 0.0) throw ConstructionError("singular linear system");
    std::swap(a[best], a[col]);
    std::swap(b[best], b[col]);
    for (std::size_t i = col + 1; i < n; ++i) {
      double f = a[i][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
      b[i] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

/// LDL^T pivots of a symmetric matrix, computed without row exchanges.
/// A symmetric matrix is positive definite iff all pivots exist and are
/// positive; a zero pivot before completion means "not definite".
inline bool is_positive_definite(QMat a) {
  std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return true;
}

inline bool is_negative_definite(QMat a) {
  for (auto& row : a)
    for (auto& x : row) x = -x;
  return is_positive_definite(std::move(a));
}

}  // namespace liecurv
