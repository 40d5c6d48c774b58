#pragma once

// Closed-form eigensystems. For H = Lambda + N the eigenvalues are the
// diagonal, and the eigenket matrix has the same shape as H:
//
//   Q  = 1 + Nbar,    Nbar_{+i,-j} = -n_ij / (lambda_+i - lambda_-j),
//   H Q = Q Lambda.
//
// The transpose has Qtilde = 1 - Nbar^T with H^T Qtilde = Qtilde Lambda.
// Both factors are unit-diagonal and their off-diagonal parts square to zero,
// so inverting one means negating the off-diagonal part.

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gzz/algebra.hpp"
#include "gzz/dense.hpp"
#include "gzz/errors.hpp"
#include "gzz/model.hpp"

namespace gzz {

struct LabeledEigenvalue {
  SignedIndex label;
  double value = 0.0;
};

/// Eigenvalues in linearized order (lambda_+1, lambda_-1, ..., lambda_-m).
inline std::vector<LabeledEigenvalue> spectrum(const GzzHamiltonian& h) {
  std::vector<LabeledEigenvalue> out;
  out.reserve(h.dim());
  for (int i = 1; i <= h.m(); ++i) {
    out.push_back({SignedIndex::plus(i), h.lambda_plus(i)});
    out.push_back({SignedIndex::minus(i), h.lambda_minus(i)});
  }
  return out;
}

inline std::vector<double> spectrum(const ZigZagHamiltonian& z) { return z.a(); }

enum class FactorKind { Q, Qtilde };

/// Unit-diagonal eigenvector factor. Each entry (i, j, v) stands for
///   Q:      v at (+i, -j)
///   Qtilde: v at (-j, +i)
class EigenFactor {
public:
  EigenFactor() = default;
  EigenFactor(int m, FactorKind kind, std::vector<Coupling> entries)
      : m_(m), kind_(kind), entries_(std::move(entries)) {}

  int m() const noexcept { return m_; }
  std::size_t dim() const noexcept { return 2 * static_cast<std::size_t>(m_); }
  FactorKind kind() const noexcept { return kind_; }
  const std::vector<Coupling>& entries() const noexcept { return entries_; }

  /// F v, exploiting the sparse shape.
  template <typename T>
  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != dim()) throw DimensionMismatch("EigenFactor::apply: size mismatch");
    std::vector<T> out = v;
    for (const auto& e : entries_) {
      if (kind_ == FactorKind::Q)
        out[plus_offset(e.i)] += e.value * v[minus_offset(e.j)];
      else
        out[minus_offset(e.j)] += e.value * v[plus_offset(e.i)];
    }
    return out;
  }

  /// F^T v.
  template <typename T>
  std::vector<T> apply_transposed(const std::vector<T>& v) const {
    if (v.size() != dim()) throw DimensionMismatch("EigenFactor::apply_transposed: size mismatch");
    std::vector<T> out = v;
    for (const auto& e : entries_) {
      if (kind_ == FactorKind::Q)
        out[minus_offset(e.j)] += e.value * v[plus_offset(e.i)];
      else
        out[plus_offset(e.i)] += e.value * v[minus_offset(e.j)];
    }
    return out;
  }

private:
  int m_ = 0;
  FactorKind kind_ = FactorKind::Q;
  std::vector<Coupling> entries_;
};

inline DenseMatrix to_dense(const EigenFactor& f) {
  auto out = DenseMatrix::identity(f.dim());
  for (const auto& e : f.entries()) {
    if (f.kind() == FactorKind::Q)
      out(plus_offset(e.i), minus_offset(e.j)) = e.value;
    else
      out(minus_offset(e.j), plus_offset(e.i)) = e.value;
  }
  return out;
}

/// (1 + X)^-1 = 1 - X for X^2 = 0.
inline EigenFactor factor_inverse(const EigenFactor& f) {
  auto entries = f.entries();
  for (auto& e : entries) e.value = -e.value;
  return EigenFactor(f.m(), f.kind(), std::move(entries));
}

namespace detail {

inline void require_diagonalizable(const GzzHamiltonian& h, const char* op) {
  auto pairs = jordan_pairs(h);
  if (pairs.empty()) return;
  std::string list;
  for (auto [i, j] : pairs)
    list += (list.empty() ? "" : ", ") + ("(" + std::to_string(i) + "," + std::to_string(j) + ")");
  throw NonDiagonalizable(std::string(op) + ": lambda_+i == lambda_-j for coupled pairs " + list,
                          std::move(pairs));
}

inline std::vector<Coupling> nbar_entries(const GzzHamiltonian& h, double sign) {
  std::vector<Coupling> out;
  out.reserve(h.couplings().size());
  for (const auto& c : h.couplings()) {
    const double v = sign * -c.value / (h.lambda_plus(c.i) - h.lambda_minus(c.j));
    if (v != 0.0) out.push_back({c.i, c.j, v});
  }
  return out;
}

}  // namespace detail

/// Right eigenvectors of H as columns, normalized to unit own component.
inline EigenFactor eigen_Q(const GzzHamiltonian& h) {
  detail::require_diagonalizable(h, "eigen_Q");
  return EigenFactor(h.m(), FactorKind::Q, detail::nbar_entries(h, 1.0));
}

/// Right eigenvectors of H^T: Qtilde = 1 - Nbar^T, entry n_ij/(lambda_+i - lambda_-j) at (-j, +i).
inline EigenFactor eigen_Qtilde(const GzzHamiltonian& h) {
  detail::require_diagonalizable(h, "eigen_Qtilde");
  return EigenFactor(h.m(), FactorKind::Qtilde, detail::nbar_entries(h, -1.0));
}

/// Eigenvectors of a zig-zag matrix, arranged as a unit-diagonal matrix of the
/// same zig-zag shape (p_j = 1 on the diagonal, eigen coefficients in c).
///
/// TZ: the coefficient at the slot of c_k couples the full row r with the
/// diagonal-only column s of {k, k+1}, and solving H v = a_s v gives
/// q_k = c_k / (a_s - a_r). For odd k this is -c_k/(a_k - a_{k+1}); for even k
/// the sign flips. ZZ eigenvectors come from transposition: ZZ = TZ^T has
/// eigenvector matrix V^-T = 1 - (V - 1)^T, i.e. ZZ shape with -q.
inline ZigZagHamiltonian zz_eigen(const ZigZagHamiltonian& z) {
  auto pairs = jordan_pairs(z);
  if (!pairs.empty()) {
    std::string list;
    for (auto [k, k1] : pairs) list += (list.empty() ? "" : ", ") + std::to_string(k);
    throw NonDiagonalizable("zz_eigen: a_k == a_{k+1} with c_k != 0 at k = " + list,
                            std::move(pairs));
  }
  const auto& a = z.a();
  const auto& c = z.c();
  std::vector<double> q(c.size());
  for (std::size_t k = 1; k <= c.size(); ++k) {
    if (c[k - 1] == 0.0) continue;
    const std::size_t full = (k % 2 == 1) ? k : k + 1;  // 1-based full row in TZ
    const std::size_t diag_only = (k % 2 == 1) ? k + 1 : k;
    double tz = c[k - 1] / (a[diag_only - 1] - a[full - 1]);
    q[k - 1] = z.variant() == ZigZagVariant::TZ ? tz : -tz;
  }
  return ZigZagHamiltonian::create(z.variant(), std::vector<double>(z.dim(), 1.0), std::move(q));
}

}  // namespace gzz
