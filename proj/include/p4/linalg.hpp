#pragma once

#include <vector>

#include "p4/numerics.hpp"

namespace p4 {

/// Dense row-major matrix over an arbitrary scalar. Only what the Hankel
/// solves need: storage, pivoted LU, determinant. Double-precision paths use
/// Eigen; this exists so the same solve runs over multiprecision complex and
/// exact rational scalars.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_, cols_;
  std::vector<T> a_;
};

/// In-place LU with partial pivoting. AbsFn maps T to a comparable magnitude
/// (for rationals, abs; for complex types, norm). Returns the permutation
/// sign, or 0 if the matrix is singular to working precision.
template <typename T, typename AbsFn>
int lu_factor(DenseMatrix<T>& a, std::vector<int>& perm, AbsFn&& mag) {
  const int n = a.rows();
  perm.resize(n);
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int p = k;
    auto best = mag(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      auto m = mag(a(i, k));
      if (m > best) { best = m; p = i; }
    }
    perm[k] = p;
    if (!(best > 0)) return 0;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      T f = a(i, k) / a(k, k);
      a(i, k) = f;
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return sign;
}

/// Solves A x = b using the factorization produced by lu_factor. The factor
/// phase swaps whole rows (multipliers included), so all interchanges are
/// applied to b before the triangular solves.
template <typename T>
void lu_solve(const DenseMatrix<T>& lu, const std::vector<int>& perm, std::vector<T>& b) {
  const int n = lu.rows();
  for (int k = 0; k < n; ++k)
    if (perm[k] != k) std::swap(b[k], b[perm[k]]);
  for (int k = 0; k < n; ++k)
    for (int i = k + 1; i < n; ++i) b[i] -= lu(i, k) * b[k];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) b[i] -= lu(i, j) * b[j];
    b[i] /= lu(i, i);
  }
}

/// Determinant via pivoted LU (copy of the input is factored).
template <typename T, typename AbsFn>
T lu_det(DenseMatrix<T> a, AbsFn&& mag) {
  std::vector<int> perm;
  int sign = lu_factor(a, perm, mag);
  if (sign == 0) return T(0);
  T det = (sign > 0) ? T(1) : T(-1);
  for (int i = 0; i < a.rows(); ++i) det *= a(i, i);
  return det;
}

}  // namespace p4
