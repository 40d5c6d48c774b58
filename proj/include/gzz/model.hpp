#pragma once

// Domain types for the generalized zig-zag class H = Lambda + N and the
// classic zig-zag (ZZ / TZ) matrices, plus the signed-index convention.
//
// Rows and columns of a 2m-dimensional GZZ matrix carry the labels
// {+1, -1, +2, -2, ..., +m, -m}. Linearization is fixed: (+i) -> 2i-1,
// (-i) -> 2i (1-based). The only off-diagonal entries live at (+i, -j).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gzz/dense.hpp"
#include "gzz/errors.hpp"

namespace gzz {

enum class Sign { plus, minus };

struct SignedIndex {
  Sign sign = Sign::plus;
  int block = 1;  // 1..m

  /// 1-based linear position.
  constexpr int linear() const noexcept { return sign == Sign::plus ? 2 * block - 1 : 2 * block; }
  /// 0-based offset into dense storage.
  constexpr std::size_t offset() const noexcept { return static_cast<std::size_t>(linear() - 1); }

  static constexpr SignedIndex from_linear(int position) noexcept {
    return {position % 2 == 1 ? Sign::plus : Sign::minus, (position + 1) / 2};
  }
  static constexpr SignedIndex plus(int i) noexcept { return {Sign::plus, i}; }
  static constexpr SignedIndex minus(int i) noexcept { return {Sign::minus, i}; }

  std::string label() const { return (sign == Sign::plus ? "+" : "-") + std::to_string(block); }

  friend constexpr bool operator==(SignedIndex, SignedIndex) = default;
};

inline constexpr std::size_t plus_offset(int i) { return static_cast<std::size_t>(2 * i - 2); }
inline constexpr std::size_t minus_offset(int j) { return static_cast<std::size_t>(2 * j - 1); }

/// One coupling n_ij, stored at dense position (+i, -j). Blocks are 1-based.
struct Coupling {
  int i = 1;
  int j = 1;
  double value = 0.0;

  friend bool operator==(const Coupling&, const Coupling&) = default;
};

inline bool coupling_order(const Coupling& a, const Coupling& b) {
  return a.i != b.i ? a.i < b.i : a.j < b.j;
}

/// Relative threshold used to decide that two eigenvalues coincide.
inline constexpr double kJordanTolerance = 1e-12;

inline bool nearly_equal(double x, double y) {
  return std::abs(x - y) <= kJordanTolerance * std::max({1.0, std::abs(x), std::abs(y)});
}

/// H(lambda, n) = Lambda + N. Immutable after construction. Couplings are kept
/// sorted row-major by (i, j), unique, finite and nonzero; exact zeros are
/// pruned so the coupling pattern is canonical.
class GzzHamiltonian {
public:
  GzzHamiltonian() = default;

  /// Validating constructor. Couplings may arrive in any order; duplicates are
  /// rejected, zeros dropped.
  static GzzHamiltonian create(std::vector<double> lambda_plus, std::vector<double> lambda_minus,
                               std::vector<Coupling> couplings) {
    std::sort(couplings.begin(), couplings.end(), coupling_order);
    for (std::size_t k = 1; k < couplings.size(); ++k) {
      if (couplings[k - 1].i == couplings[k].i && couplings[k - 1].j == couplings[k].j) {
        throw ModelError("duplicate coupling (" + std::to_string(couplings[k].i) + "," +
                         std::to_string(couplings[k].j) + ")");
      }
    }
    return from_sorted(std::move(lambda_plus), std::move(lambda_minus), std::move(couplings));
  }

  /// Constructor for couplings already in canonical order. Checked in O(k).
  static GzzHamiltonian from_sorted(std::vector<double> lambda_plus,
                                    std::vector<double> lambda_minus,
                                    std::vector<Coupling> couplings) {
    if (lambda_plus.size() != lambda_minus.size()) {
      throw ModelError("lambda_plus has " + std::to_string(lambda_plus.size()) +
                       " entries but lambda_minus has " + std::to_string(lambda_minus.size()));
    }
    const int m = static_cast<int>(lambda_plus.size());
    for (int k = 0; k < m; ++k) {
      if (!std::isfinite(lambda_plus[k]) || !std::isfinite(lambda_minus[k]))
        throw ModelError("non-finite diagonal entry in block " + std::to_string(k + 1));
    }
    std::erase_if(couplings, [](const Coupling& c) { return c.value == 0.0; });
    for (std::size_t k = 0; k < couplings.size(); ++k) {
      const auto& c = couplings[k];
      if (c.i < 1 || c.i > m || c.j < 1 || c.j > m) {
        throw ModelError("coupling (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                         ") outside 1.." + std::to_string(m));
      }
      if (!std::isfinite(c.value)) {
        throw ModelError("non-finite coupling (" + std::to_string(c.i) + "," +
                         std::to_string(c.j) + ")");
      }
      if (k > 0 && !coupling_order(couplings[k - 1], c))
        throw ModelError("couplings not in canonical (i, j) order");
    }
    GzzHamiltonian h;
    h.lambda_plus_ = std::move(lambda_plus);
    h.lambda_minus_ = std::move(lambda_minus);
    h.couplings_ = std::move(couplings);
    return h;
  }

  static GzzHamiltonian identity(int m) {
    return from_sorted(std::vector<double>(m, 1.0), std::vector<double>(m, 1.0), {});
  }

  int m() const noexcept { return static_cast<int>(lambda_plus_.size()); }
  std::size_t dim() const noexcept { return 2 * lambda_plus_.size(); }

  const std::vector<double>& lambda_plus() const noexcept { return lambda_plus_; }
  const std::vector<double>& lambda_minus() const noexcept { return lambda_minus_; }
  const std::vector<Coupling>& couplings() const noexcept { return couplings_; }

  double lambda_plus(int i) const { return lambda_plus_[i - 1]; }
  double lambda_minus(int j) const { return lambda_minus_[j - 1]; }

  double diagonal(SignedIndex s) const {
    return s.sign == Sign::plus ? lambda_plus(s.block) : lambda_minus(s.block);
  }

  /// Diagonal in linearized order (lambda_+1, lambda_-1, ..., lambda_-m).
  std::vector<double> diagonal() const {
    std::vector<double> out(dim());
    for (int i = 1; i <= m(); ++i) {
      out[plus_offset(i)] = lambda_plus(i);
      out[minus_offset(i)] = lambda_minus(i);
    }
    return out;
  }

  /// n_ij, 0 when absent.
  double coupling(int i, int j) const {
    auto it = std::lower_bound(couplings_.begin(), couplings_.end(), Coupling{i, j, 0.0},
                               coupling_order);
    return (it != couplings_.end() && it->i == i && it->j == j) ? it->value : 0.0;
  }

  friend bool operator==(const GzzHamiltonian&, const GzzHamiltonian&) = default;

private:
  std::vector<double> lambda_plus_;
  std::vector<double> lambda_minus_;
  std::vector<Coupling> couplings_;
};

enum class ZigZagVariant { ZZ, TZ };

inline std::string to_string(ZigZagVariant v) { return v == ZigZagVariant::ZZ ? "ZZ" : "TZ"; }

/// Sparse-tridiagonal zig-zag matrix of dimension M.
///
/// ZZ: even rows (1-based) 2k are full, c_{2k-1} at (2k, 2k-1) and c_{2k} at
/// (2k, 2k+1); odd rows hold only the diagonal. TZ is the transpose.
/// In both variants c_k couples a_k and a_{k+1}.
class ZigZagHamiltonian {
public:
  ZigZagHamiltonian() = default;

  static ZigZagHamiltonian create(ZigZagVariant variant, std::vector<double> a,
                                  std::vector<double> c) {
    if (a.empty()) throw ModelError("zig-zag model needs at least one diagonal entry");
    if (c.size() + 1 != a.size()) {
      throw ModelError("zig-zag model of dimension " + std::to_string(a.size()) + " needs " +
                       std::to_string(a.size() - 1) + " off-diagonal entries, got " +
                       std::to_string(c.size()));
    }
    for (double x : a)
      if (!std::isfinite(x)) throw ModelError("non-finite diagonal entry in zig-zag model");
    for (double x : c)
      if (!std::isfinite(x)) throw ModelError("non-finite off-diagonal entry in zig-zag model");
    ZigZagHamiltonian z;
    z.variant_ = variant;
    z.a_ = std::move(a);
    z.c_ = std::move(c);
    return z;
  }

  std::size_t dim() const noexcept { return a_.size(); }
  ZigZagVariant variant() const noexcept { return variant_; }
  const std::vector<double>& a() const noexcept { return a_; }
  const std::vector<double>& c() const noexcept { return c_; }

  /// 0-based (row, col) of c_k (k is 1-based).
  std::pair<std::size_t, std::size_t> position_of_c(std::size_t k) const {
    // ZZ: the full row is the even one of {k, k+1}.
    const std::size_t full = (k % 2 == 1) ? k + 1 : k;       // 1-based
    const std::size_t other = (k % 2 == 1) ? k : k + 1;      // 1-based
    if (variant_ == ZigZagVariant::ZZ) return {full - 1, other - 1};
    return {other - 1, full - 1};
  }

  friend bool operator==(const ZigZagHamiltonian&, const ZigZagHamiltonian&) = default;

private:
  ZigZagVariant variant_ = ZigZagVariant::ZZ;
  std::vector<double> a_;
  std::vector<double> c_;
};

/// kappa^2 weights in linearized signed-index order, all strictly positive.
class WeightVector {
public:
  WeightVector() = default;

  static WeightVector create(std::vector<double> kappa_sq) {
    for (std::size_t k = 0; k < kappa_sq.size(); ++k) {
      if (!(kappa_sq[k] > 0.0) || !std::isfinite(kappa_sq[k])) {
        throw InvalidWeight("kappa^2 at position " + std::to_string(k + 1) +
                            " must be finite and strictly positive");
      }
    }
    WeightVector w;
    w.kappa_sq_ = std::move(kappa_sq);
    return w;
  }

  static WeightVector uniform(std::size_t dim, double value = 1.0) {
    return create(std::vector<double>(dim, value));
  }

  std::size_t size() const noexcept { return kappa_sq_.size(); }
  const std::vector<double>& kappa_sq() const noexcept { return kappa_sq_; }
  double operator[](std::size_t k) const { return kappa_sq_[k]; }

private:
  std::vector<double> kappa_sq_;
};

struct ValidationReport {
  /// GZZ: (i, j) with n_ij != 0 and lambda_+i == lambda_-j.
  /// Zig-zag: (k, k+1) with c_k != 0 and a_k == a_{k+1}.
  std::vector<std::pair<int, int>> jordan_pairs;
  /// 1-based linear positions of zero diagonal entries.
  std::vector<int> zero_diagonal;
  /// Pairs of 1-based linear positions carrying equal eigenvalues (adjacent
  /// after sorting). Informational only.
  std::vector<std::pair<int, int>> degenerate;

  bool diagonalizable() const noexcept { return jordan_pairs.empty(); }
  bool invertible() const noexcept { return zero_diagonal.empty(); }
};

namespace detail {

inline void scan_diagonal(const std::vector<double>& diag, ValidationReport& report) {
  std::vector<int> order(diag.size());
  for (std::size_t k = 0; k < diag.size(); ++k) {
    order[k] = static_cast<int>(k);
    if (diag[k] == 0.0) report.zero_diagonal.push_back(static_cast<int>(k) + 1);
  }
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] < diag[y]; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (nearly_equal(diag[order[k - 1]], diag[order[k]])) {
      int x = order[k - 1] + 1, y = order[k] + 1;
      report.degenerate.emplace_back(std::min(x, y), std::max(x, y));
    }
  }
}

}  // namespace detail

inline std::vector<std::pair<int, int>> jordan_pairs(const GzzHamiltonian& h) {
  std::vector<std::pair<int, int>> out;
  for (const auto& c : h.couplings())
    if (nearly_equal(h.lambda_plus(c.i), h.lambda_minus(c.j))) out.emplace_back(c.i, c.j);
  return out;
}

inline std::vector<std::pair<int, int>> jordan_pairs(const ZigZagHamiltonian& z) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t k = 1; k <= z.c().size(); ++k)
    if (z.c()[k - 1] != 0.0 && nearly_equal(z.a()[k - 1], z.a()[k]))
      out.emplace_back(static_cast<int>(k), static_cast<int>(k) + 1);
  return out;
}

inline ValidationReport validate(const GzzHamiltonian& h) {
  ValidationReport report;
  report.jordan_pairs = jordan_pairs(h);
  detail::scan_diagonal(h.diagonal(), report);
  return report;
}

inline ValidationReport validate(const ZigZagHamiltonian& z) {
  ValidationReport report;
  report.jordan_pairs = jordan_pairs(z);
  detail::scan_diagonal(z.a(), report);
  return report;
}

inline DenseMatrix to_dense(const GzzHamiltonian& h) {
  DenseMatrix out(h.dim(), h.dim());
  for (int i = 1; i <= h.m(); ++i) {
    out(plus_offset(i), plus_offset(i)) = h.lambda_plus(i);
    out(minus_offset(i), minus_offset(i)) = h.lambda_minus(i);
  }
  for (const auto& c : h.couplings()) out(plus_offset(c.i), minus_offset(c.j)) = c.value;
  return out;
}

inline DenseMatrix to_dense(const ZigZagHamiltonian& z) {
  DenseMatrix out(z.dim(), z.dim());
  for (std::size_t k = 0; k < z.dim(); ++k) out(k, k) = z.a()[k];
  for (std::size_t k = 1; k <= z.c().size(); ++k) {
    auto [r, c] = z.position_of_c(k);
    out(r, c) = z.c()[k - 1];
  }
  return out;
}

/// Inverse of to_dense for the GZZ class. Throws ModelError if any entry sits
/// outside the allowed (+i, -j) / diagonal pattern.
inline GzzHamiltonian gzz_from_dense(const DenseMatrix& d) {
  if (!d.square() || d.rows() % 2 != 0)
    throw DimensionMismatch("gzz_from_dense: need an even square matrix");
  const int m = static_cast<int>(d.rows() / 2);
  std::vector<double> lp(m), lm(m);
  std::vector<Coupling> couplings;
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t c = 0; c < d.cols(); ++c) {
      const double x = d(r, c);
      if (r == c) {
        auto s = SignedIndex::from_linear(static_cast<int>(r) + 1);
        (s.sign == Sign::plus ? lp : lm)[s.block - 1] = x;
      } else if (x != 0.0) {
        if (r % 2 != 0 || c % 2 != 1) {
          throw ModelError("entry at (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                           ") is outside the generalized zig-zag pattern");
        }
        couplings.push_back({static_cast<int>(r / 2) + 1, static_cast<int>(c / 2) + 1, x});
      }
    }
  }
  return GzzHamiltonian::from_sorted(std::move(lp), std::move(lm), std::move(couplings));
}

}  // namespace gzz
