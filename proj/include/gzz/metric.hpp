#pragma once

// Inner-product metrics Theta for the generalized zig-zag class.
//
// Every solution of H^T Theta = Theta H (with distinct spectrum) has the form
//   Theta = Qtilde K^2 Qtilde^T,   Qtilde = 1 - Nbar^T,
// i.e. a weighted sum of outer products of the eigenvectors of H^T. Strictly
// positive weights give a positive-definite metric (det Qtilde = 1).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gzz/algebra.hpp"
#include "gzz/dense.hpp"
#include "gzz/errors.hpp"
#include "gzz/model.hpp"
#include "gzz/spectral.hpp"

namespace gzz {

class MetricOperator {
public:
  MetricOperator(DenseMatrix theta, WeightVector weights, GzzHamiltonian source)
      : theta_(std::move(theta)), weights_(std::move(weights)), source_(std::move(source)) {}

  const DenseMatrix& theta() const noexcept { return theta_; }
  const WeightVector& weights() const noexcept { return weights_; }
  const GzzHamiltonian& source() const noexcept { return source_; }
  std::size_t dim() const noexcept { return theta_.rows(); }

private:
  DenseMatrix theta_;
  WeightVector weights_;
  GzzHamiltonian source_;
};

inline const DenseMatrix& to_dense(const MetricOperator& metric) { return metric.theta(); }

struct DysonFactor {
  /// Omega = K Qtilde^T = K (1 - Nbar), with Omega^T Omega = Theta.
  DenseMatrix omega;
  /// Omega^-1 = (1 + Nbar) K^-1 = Q K^-1.
  DenseMatrix omega_inverse;
};

namespace detail {

inline void require_weights(const WeightVector& w, std::size_t dim) {
  if (w.size() != dim) {
    throw DimensionMismatch("weight vector has " + std::to_string(w.size()) + " entries, model needs " +
                        std::to_string(dim));
  }
}

/// Expanded triple product for a unit-diagonal factor F = 1 + X whose
/// off-diagonal part X sits at (row_of(e), col_of(e)):
///   F K^2 F^T = K^2 + X K^2 + K^2 X^T + X K^2 X^T.
/// Each symmetric pair of entries is written from one computed value.
template <typename RowOf, typename ColOf>
DenseMatrix weighted_congruence(const EigenFactor& f, const WeightVector& w, RowOf row_of,
                                ColOf col_of) {
  const std::size_t n = f.dim();
  DenseMatrix theta(n, n);
  for (std::size_t k = 0; k < n; ++k) theta(k, k) = w[k];
  const auto& entries = f.entries();
  // X K^2 + K^2 X^T: entry (r, c) = X_rc kappa_c^2.
  for (const auto& e : entries) {
    const std::size_t r = row_of(e), c = col_of(e);
    const double v = e.value * w[c];
    theta(r, c) += v;
    theta(c, r) += v;
  }
  // X K^2 X^T: (r, r') = sum_c X_rc kappa_c^2 X_r'c. Group entries by column.
  std::vector<std::vector<std::pair<std::size_t, double>>> by_col(n);
  for (const auto& e : entries) by_col[col_of(e)].emplace_back(row_of(e), e.value);
  for (std::size_t c = 0; c < n; ++c) {
    const auto& col = by_col[c];
    for (std::size_t p = 0; p < col.size(); ++p) {
      for (std::size_t q = p; q < col.size(); ++q) {
        const double v = col[p].second * w[c] * col[q].second;
        theta(col[p].first, col[q].first) += v;
        if (p != q) theta(col[q].first, col[p].first) += v;
      }
    }
  }
  return theta;
}

}  // namespace detail

/// Theta = Qtilde K^2 Qtilde^T. Satisfies H^T Theta = Theta H.
inline MetricOperator build_theta(const GzzHamiltonian& h, const WeightVector& w) {
  detail::require_weights(w, h.dim());
  const auto qt = eigen_Qtilde(h);
  auto theta = detail::weighted_congruence(
      qt, w, [](const Coupling& e) { return minus_offset(e.j); },
      [](const Coupling& e) { return plus_offset(e.i); });
  return MetricOperator(std::move(theta), w, h);
}

/// Metric for the transposed model: Theta = Q K^2 Q^T satisfies
/// H Theta = Theta H^T, i.e. (H^T)^T Theta = Theta H^T.
inline MetricOperator build_theta(const TransposedGzz& t, const WeightVector& w) {
  detail::require_weights(w, t.dim());
  const auto q = eigen_Q(t.original());
  auto theta = detail::weighted_congruence(
      q, w, [](const Coupling& e) { return plus_offset(e.i); },
      [](const Coupling& e) { return minus_offset(e.j); });
  return MetricOperator(std::move(theta), w, t.original());
}

/// Theta assembled as sum_n kappa_n^2 |n]] [[n| from the dense eigenvector
/// columns of H^T. Slower cross-check for build_theta.
inline DenseMatrix metric_rank_one_sum(const GzzHamiltonian& h, const WeightVector& w) {
  detail::require_weights(w, h.dim());
  const auto columns = to_dense(eigen_Qtilde(h));
  const std::size_t n = h.dim();
  DenseMatrix theta(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) theta(r, c) += columns(r, k) * w[k] * columns(c, k);
  return theta;
}

/// ||H^T Theta - Theta H||_F / (||H||_F ||Theta||_F).
inline double quasi_hermiticity_residual(const DenseMatrix& h, const DenseMatrix& theta) {
  if (!h.square() || !theta.square() || h.rows() != theta.rows())
    throw DimensionMismatch("quasi_hermiticity_residual: shape mismatch");
  const std::size_t n = h.rows();
  double sum = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      double x = 0.0;
      for (std::size_t k = 0; k < n; ++k) x += h(k, r) * theta(k, c) - theta(r, k) * h(k, c);
      sum += x * x;
    }
  }
  const double scale = frobenius_norm(h) * frobenius_norm(theta);
  return scale == 0.0 ? std::sqrt(sum) : std::sqrt(sum) / scale;
}

inline double quasi_hermiticity_residual(const GzzHamiltonian& h, const MetricOperator& metric) {
  return quasi_hermiticity_residual(to_dense(h), metric.theta());
}

struct PositivityCertificate {
  bool positive = false;
  /// Direction v with v^T Theta v <= 0 when not positive.
  std::vector<double> witness;
  /// v^T Theta v for the witness.
  double witness_value = 0.0;
};

/// Diagonally pivoted Cholesky. A pivot at or below n * eps * max diag stops
/// the factorization; the witness is x = [-A^-1 B e_p; e_p] for the trailing
/// Schur complement S = C - B^T A^-1 B, so that v^T Theta v = S_pp.
inline PositivityCertificate certify_positive(const DenseMatrix& theta) {
  if (!theta.square()) throw DimensionMismatch("certify_positive: matrix is not square");
  const std::size_t n = theta.rows();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c)
      if (theta(r, c) != theta(c, r))
        throw DimensionMismatch("certify_positive: matrix is not symmetric at (" +
                                std::to_string(r + 1) + "," + std::to_string(c + 1) + ")");

  double max_diag = 0.0;
  for (std::size_t k = 0; k < n; ++k) max_diag = std::max(max_diag, std::abs(theta(k, k)));
  const double floor = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * max_diag;

  DenseMatrix work = theta;  // lower triangle of the Schur complements, permuted
  DenseMatrix l(n, n);
  std::vector<std::size_t> perm(n);
  for (std::size_t k = 0; k < n; ++k) perm[k] = k;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (work(r, r) > work(p, p)) p = r;
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(work(k, c), work(p, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(work(r, k), work(r, p));
      for (std::size_t c = 0; c < k; ++c) std::swap(l(k, c), l(p, c));
      std::swap(perm[k], perm[p]);
    }
    const double pivot = work(k, k);
    if (!(pivot > floor)) {
      // Any remaining diagonal is <= pivot <= floor. Witness for index k.
      std::vector<double> y(n, 0.0);
      y[k] = 1.0;
      // Solve L11^T x = -L21[k-row]^T for x (first k components).
      for (std::size_t r = k; r-- > 0;) {
        double s = -l(k, r);
        for (std::size_t c = r + 1; c < k; ++c) s -= l(c, r) * y[c];
        y[r] = s / l(r, r);
      }
      PositivityCertificate cert;
      cert.witness.assign(n, 0.0);
      for (std::size_t r = 0; r < n; ++r) cert.witness[perm[r]] = y[r];
      double value = 0.0;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          value += cert.witness[r] * theta(r, c) * cert.witness[c];
      cert.witness_value = value;
      return cert;
    }
    const double root = std::sqrt(pivot);
    l(k, k) = root;
    for (std::size_t r = k + 1; r < n; ++r) l(r, k) = work(r, k) / root;
    for (std::size_t r = k + 1; r < n; ++r)
      for (std::size_t c = k + 1; c <= r; ++c) {
        work(r, c) -= l(r, k) * l(c, k);
        work(c, r) = work(r, c);
      }
  }
  return {true, {}, 0.0};
}

/// Omega = K Qtilde^T, the Dyson map whose Hermitian partner is diag(Lambda).
inline DysonFactor dyson_factor(const GzzHamiltonian& h, const WeightVector& w) {
  detail::require_weights(w, h.dim());
  const auto q = eigen_Q(h);  // Qtilde^T = Q^-1 = 1 - Nbar
  const std::size_t n = h.dim();
  DysonFactor f{DenseMatrix(n, n), DenseMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const double kappa = std::sqrt(w[k]);
    f.omega(k, k) = kappa;
    f.omega_inverse(k, k) = 1.0 / kappa;
  }
  for (const auto& e : q.entries()) {
    const std::size_t r = plus_offset(e.i), c = minus_offset(e.j);
    f.omega(r, c) = -std::sqrt(w[r]) * e.value;
    f.omega_inverse(r, c) = e.value / std::sqrt(w[c]);
  }
  return f;
}

/// Largest |r - c| over entries with |Theta_rc| > tol * max|Theta|.
inline std::size_t bandwidth(const DenseMatrix& theta, double tol = 1e-12) {
  if (!theta.square()) throw DimensionMismatch("bandwidth: matrix is not square");
  const double threshold = tol * max_abs(theta);
  std::size_t band = 0;
  for (std::size_t r = 0; r < theta.rows(); ++r)
    for (std::size_t c = 0; c < theta.cols(); ++c)
      if (std::abs(theta(r, c)) > threshold) band = std::max(band, r > c ? r - c : c - r);
  return band;
}

}  // namespace gzz
