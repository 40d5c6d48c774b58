#pragma once

// Brute-force dense numerics used only to check the closed-form results.
// Nothing in here may include or call the structured modules; it only knows
// about dense matrices.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gzz/dense.hpp"
#include "gzz/errors.hpp"

namespace gzz::oracle {

template <typename Scalar>
BasicDenseMatrix<Scalar> dense_mul(const BasicDenseMatrix<Scalar>& a,
                                   const BasicDenseMatrix<Scalar>& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("dense_mul: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                            "x" + std::to_string(b.cols()));
  }
  BasicDenseMatrix<Scalar> out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar x = a(r, k);
      if (x == Scalar{}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += x * b(k, c);
    }
  }
  return out;
}

template <typename Scalar>
BasicDenseMatrix<Scalar> dense_sub(const BasicDenseMatrix<Scalar>& a,
                                   const BasicDenseMatrix<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("dense_sub: shape mismatch");
  BasicDenseMatrix<Scalar> out = a;
  for (std::size_t k = 0; k < out.entries().size(); ++k) out.entries()[k] -= b.entries()[k];
  return out;
}

template <typename Scalar>
BasicDenseMatrix<Scalar> dense_scale(BasicDenseMatrix<Scalar> a, Scalar s) {
  for (auto& x : a.entries()) x *= s;
  return a;
}

template <typename Scalar>
std::vector<Scalar> dense_apply(const BasicDenseMatrix<Scalar>& a, const std::vector<Scalar>& v) {
  if (a.cols() != v.size()) throw DimensionMismatch("dense_apply: size mismatch");
  std::vector<Scalar> out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out[r] += a(r, c) * v[c];
  return out;
}

/// Solves A X = B by Gauss-Jordan elimination with partial pivoting.
/// A pivot at or below 1e-13 * max|A| counts as singular.
template <typename Scalar>
BasicDenseMatrix<Scalar> dense_solve(BasicDenseMatrix<Scalar> a, BasicDenseMatrix<Scalar> b) {
  if (!a.square() || a.rows() != b.rows()) throw DimensionMismatch("dense_solve: shape mismatch");
  const std::size_t n = a.rows();
  const double threshold = 1e-13 * max_abs(a);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (!(std::abs(a(pivot, col)) > threshold)) {
      throw SingularMatrix("dense_solve: pivot " + std::to_string(col + 1) + " vanishes",
                           {static_cast<int>(col) + 1});
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      for (std::size_t c = 0; c < b.cols(); ++c) std::swap(b(pivot, c), b(col, c));
    }
    const Scalar inv = Scalar{1} / a(col, col);
    for (std::size_t c = col; c < n; ++c) a(col, c) *= inv;
    for (std::size_t c = 0; c < b.cols(); ++c) b(col, c) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Scalar f = a(r, col);
      if (f == Scalar{}) continue;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      for (std::size_t c = 0; c < b.cols(); ++c) b(r, c) -= f * b(col, c);
    }
  }
  return b;
}

template <typename Scalar>
BasicDenseMatrix<Scalar> dense_inverse(const BasicDenseMatrix<Scalar>& a) {
  if (!a.square()) throw DimensionMismatch("dense_inverse: matrix is not square");
  return dense_solve(a, BasicDenseMatrix<Scalar>::identity(a.rows()));
}

/// Rank and nullspace of a linear operator given as a dense matrix.
struct LinearSystemReport {
  std::size_t rank = 0;
  std::size_t nullspace_dim = 0;
  /// Nullspace basis. For plain matrices each entry is a column vector
  /// (n x 1); sylvester_metric_space reshapes them to symmetric matrices.
  std::vector<DenseMatrix> basis;
};

/// Row reduction with full pivoting; pivots at or below rel_tol * max|A| end
/// the elimination.
inline LinearSystemReport nullspace(DenseMatrix a, double rel_tol = 1e-10) {
  const std::size_t rows = a.rows(), cols = a.cols();
  const double threshold = rel_tol * max_abs(a);
  std::vector<std::size_t> col_order(cols);
  for (std::size_t k = 0; k < cols; ++k) col_order[k] = k;

  std::size_t rank = 0;
  while (rank < std::min(rows, cols)) {
    std::size_t pr = rank, pc = rank;
    double best = -1.0;
    for (std::size_t r = rank; r < rows; ++r)
      for (std::size_t c = rank; c < cols; ++c)
        if (std::abs(a(r, c)) > best) best = std::abs(a(r, c)), pr = r, pc = c;
    if (!(best > threshold)) break;
    for (std::size_t c = 0; c < cols; ++c) std::swap(a(rank, c), a(pr, c));
    for (std::size_t r = 0; r < rows; ++r) std::swap(a(r, rank), a(r, pc));
    std::swap(col_order[rank], col_order[pc]);
    const double inv = 1.0 / a(rank, rank);
    for (std::size_t c = rank; c < cols; ++c) a(rank, c) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const double f = a(r, rank);
      if (f == 0.0) continue;
      for (std::size_t c = rank; c < cols; ++c) a(r, c) -= f * a(rank, c);
    }
    ++rank;
  }

  LinearSystemReport report;
  report.rank = rank;
  report.nullspace_dim = cols - rank;
  // Reduced form [I F; 0 0] in permuted columns: free column f gives the
  // null vector x_free = e_f, x_pivot = -F[:, f].
  for (std::size_t f = rank; f < cols; ++f) {
    DenseMatrix v(cols, 1);
    v(col_order[f], 0) = 1.0;
    for (std::size_t p = 0; p < rank; ++p) v(col_order[p], 0) = -a(p, f);
    report.basis.push_back(std::move(v));
  }
  return report;
}

inline std::size_t matrix_rank(const DenseMatrix& a, double rel_tol = 1e-10) {
  return nullspace(a, rel_tol).rank;
}

/// Index of the symmetric basis element E_ab (a <= b) in row-major upper-
/// triangle order.
inline std::size_t symmetric_slot(std::size_t n, std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  return a * n - a * (a - 1) / 2 + (b - a);
}

/// Nullspace of Theta -> H^T Theta - Theta H restricted to symmetric Theta,
/// computed by vectorizing over the n(n+1)/2 symmetric basis matrices.
inline LinearSystemReport sylvester_metric_space(const DenseMatrix& h, double rel_tol = 1e-10) {
  if (!h.square()) throw DimensionMismatch("sylvester_metric_space: H is not square");
  const std::size_t n = h.rows();
  if (n > 16) {
    throw DimensionMismatch("sylvester_metric_space: dimension " + std::to_string(n) +
                            " exceeds the cap of 16");
  }
  const std::size_t sym = n * (n + 1) / 2;
  DenseMatrix op(n * n, sym);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      DenseMatrix e(n, n);
      e(a, b) = 1.0;
      e(b, a) = 1.0;
      auto image = dense_sub(dense_mul(h.transposed(), e), dense_mul(e, h));
      const std::size_t col = symmetric_slot(n, a, b);
      for (std::size_t k = 0; k < n * n; ++k) op(k, col) = image.entries()[k];
    }
  }
  auto report = nullspace(std::move(op), rel_tol);
  for (auto& v : report.basis) {
    DenseMatrix theta(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) theta(a, b) = theta(b, a) = v(symmetric_slot(n, a, b), 0);
    v = std::move(theta);
  }
  return report;
}

/// e^A by scaling and squaring around a truncated Taylor series. The scaling
/// exponent s makes ||A / 2^s||_F <= 0.5; terms are summed until the next one
/// drops below tol relative to the partial sum.
inline ComplexMatrix expm_series(const ComplexMatrix& a, double tol = 1e-16) {
  if (!a.square()) throw DimensionMismatch("expm_series: matrix is not square");
  const std::size_t n = a.rows();
  const double norm = frobenius_norm(a);
  int s = 0;
  while (std::ldexp(norm, -s) > 0.5) ++s;
  const auto scaled = dense_scale(a, std::complex<double>(std::ldexp(1.0, -s), 0.0));

  auto sum = ComplexMatrix::identity(n);
  auto term = ComplexMatrix::identity(n);
  for (int k = 1; k < 64; ++k) {
    term = dense_scale(dense_mul(term, scaled), std::complex<double>(1.0 / k, 0.0));
    const double tnorm = frobenius_norm(term);
    if (tnorm == 0.0) break;
    for (std::size_t x = 0; x < sum.entries().size(); ++x) sum.entries()[x] += term.entries()[x];
    // Remaining tail is bounded by tnorm * sum_{j>=1} 0.5^j = tnorm.
    if (tnorm <= tol * frobenius_norm(sum)) break;
  }
  for (int k = 0; k < s; ++k) sum = dense_mul(sum, sum);
  return sum;
}

/// Plain (unpivoted) Cholesky attempt; true iff every pivot is positive.
inline bool cholesky_positive(const DenseMatrix& a) {
  if (!a.square()) throw DimensionMismatch("cholesky_positive: matrix is not square");
  const std::size_t n = a.rows();
  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return false;
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return true;
}

/// Relative residual ||A X - B||_F / (||A||_F ||X||_F).
template <typename Scalar>
double relative_residual(const BasicDenseMatrix<Scalar>& a, const BasicDenseMatrix<Scalar>& x,
                         const BasicDenseMatrix<Scalar>& b) {
  const double scale = frobenius_norm(a) * frobenius_norm(x);
  const double r = frobenius_distance(dense_mul(a, x), b);
  return scale == 0.0 ? r : r / scale;
}

}  // namespace gzz::oracle
