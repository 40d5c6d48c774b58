#pragma once

// Closed-form algebra on the generalized zig-zag class. Every operation here
// works on the sparse coupling list and costs O(m + |pattern|); nothing
// materializes a 2m x 2m matrix.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "gzz/dense.hpp"
#include "gzz/errors.hpp"
#include "gzz/model.hpp"

namespace gzz {

/// Set of (i, j) blocks with n_ij != 0, sorted row-major.
using CouplingPattern = std::vector<std::pair<int, int>>;

inline CouplingPattern pattern(const GzzHamiltonian& h) {
  CouplingPattern out;
  out.reserve(h.couplings().size());
  for (const auto& c : h.couplings()) out.emplace_back(c.i, c.j);
  return out;
}

inline CouplingPattern pattern_union(const CouplingPattern& a, const CouplingPattern& b) {
  CouplingPattern out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool pattern_includes(const CouplingPattern& outer, const CouplingPattern& inner) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

namespace detail {

inline void require_same_m(const GzzHamiltonian& a, const GzzHamiltonian& b, const char* op) {
  if (a.m() != b.m()) {
    throw DimensionMismatch(std::string(op) + ": block counts differ (" + std::to_string(a.m()) +
                            " vs " + std::to_string(b.m()) + ")");
  }
}

/// Merge two canonical coupling lists, combining entries at equal (i, j) with
/// `both`, and entries present on one side only with `left` / `right`.
template <typename Both, typename Left, typename Right>
std::vector<Coupling> merge_couplings(const std::vector<Coupling>& x, const std::vector<Coupling>& y,
                                      Both both, Left left, Right right) {
  std::vector<Coupling> out;
  out.reserve(x.size() + y.size());
  auto emit = [&out](int i, int j, double v) {
    if (v != 0.0) out.push_back({i, j, v});
  };
  std::size_t p = 0, q = 0;
  while (p < x.size() || q < y.size()) {
    if (q == y.size() || (p < x.size() && coupling_order(x[p], y[q]))) {
      emit(x[p].i, x[p].j, left(x[p]));
      ++p;
    } else if (p == x.size() || coupling_order(y[q], x[p])) {
      emit(y[q].i, y[q].j, right(y[q]));
      ++q;
    } else {
      emit(x[p].i, x[p].j, both(x[p], y[q]));
      ++p;
      ++q;
    }
  }
  return out;
}

}  // namespace detail

inline GzzHamiltonian gzz_add(const GzzHamiltonian& a, const GzzHamiltonian& b) {
  detail::require_same_m(a, b, "gzz_add");
  std::vector<double> lp(a.m()), lm(a.m());
  for (int k = 0; k < a.m(); ++k) {
    lp[k] = a.lambda_plus()[k] + b.lambda_plus()[k];
    lm[k] = a.lambda_minus()[k] + b.lambda_minus()[k];
  }
  auto couplings = detail::merge_couplings(
      a.couplings(), b.couplings(),
      [](const Coupling& x, const Coupling& y) { return x.value + y.value; },
      [](const Coupling& x) { return x.value; }, [](const Coupling& y) { return y.value; });
  return GzzHamiltonian::from_sorted(std::move(lp), std::move(lm), std::move(couplings));
}

/// (Lambda + N)(Lambda' + N') = Lambda Lambda' + (Lambda N' + N Lambda'),
/// since N N' = 0 for any two members of the class.
inline GzzHamiltonian gzz_mul(const GzzHamiltonian& a, const GzzHamiltonian& b) {
  detail::require_same_m(a, b, "gzz_mul");
  std::vector<double> lp(a.m()), lm(a.m());
  for (int k = 0; k < a.m(); ++k) {
    lp[k] = a.lambda_plus()[k] * b.lambda_plus()[k];
    lm[k] = a.lambda_minus()[k] * b.lambda_minus()[k];
  }
  // n''_ij = lambda_+i n'_ij + n_ij lambda'_-j
  auto couplings = detail::merge_couplings(
      a.couplings(), b.couplings(),
      [&](const Coupling& x, const Coupling& y) {
        return a.lambda_plus(x.i) * y.value + x.value * b.lambda_minus(x.j);
      },
      [&](const Coupling& x) { return x.value * b.lambda_minus(x.j); },
      [&](const Coupling& y) { return a.lambda_plus(y.i) * y.value; });
  return GzzHamiltonian::from_sorted(std::move(lp), std::move(lm), std::move(couplings));
}

/// (Lambda + N)^-1 = Lambda^-1 - Lambda^-1 N Lambda^-1.
inline GzzHamiltonian gzz_inverse(const GzzHamiltonian& a) {
  std::vector<int> zeros;
  for (int i = 1; i <= a.m(); ++i) {
    if (a.lambda_plus(i) == 0.0) zeros.push_back(SignedIndex::plus(i).linear());
    if (a.lambda_minus(i) == 0.0) zeros.push_back(SignedIndex::minus(i).linear());
  }
  if (!zeros.empty()) {
    std::string where;
    for (int p : zeros) where += (where.empty() ? "" : ", ") + SignedIndex::from_linear(p).label();
    throw SingularMatrix("gzz_inverse: zero diagonal entries at " + where, std::move(zeros));
  }
  std::vector<double> lp(a.m()), lm(a.m());
  for (int k = 0; k < a.m(); ++k) {
    lp[k] = 1.0 / a.lambda_plus()[k];
    lm[k] = 1.0 / a.lambda_minus()[k];
  }
  std::vector<Coupling> couplings;
  couplings.reserve(a.couplings().size());
  for (const auto& c : a.couplings())
    couplings.push_back({c.i, c.j, -c.value / (a.lambda_plus(c.i) * a.lambda_minus(c.j))});
  return GzzHamiltonian::from_sorted(std::move(lp), std::move(lm), std::move(couplings));
}

/// H^T for a GZZ model. Same parameters; the coupling n_ij sits at (-j, +i).
class TransposedGzz {
public:
  explicit TransposedGzz(GzzHamiltonian original) : original_(std::move(original)) {}

  const GzzHamiltonian& original() const noexcept { return original_; }
  int m() const noexcept { return original_.m(); }
  std::size_t dim() const noexcept { return original_.dim(); }

  friend bool operator==(const TransposedGzz&, const TransposedGzz&) = default;

private:
  GzzHamiltonian original_;
};

inline TransposedGzz gzz_transpose(const GzzHamiltonian& a) { return TransposedGzz(a); }
inline GzzHamiltonian gzz_transpose(const TransposedGzz& a) { return a.original(); }

inline DenseMatrix to_dense(const TransposedGzz& t) {
  const auto& h = t.original();
  DenseMatrix out(h.dim(), h.dim());
  for (int i = 1; i <= h.m(); ++i) {
    out(plus_offset(i), plus_offset(i)) = h.lambda_plus(i);
    out(minus_offset(i), minus_offset(i)) = h.lambda_minus(i);
  }
  for (const auto& c : h.couplings()) out(minus_offset(c.j), plus_offset(c.i)) = c.value;
  return out;
}

/// Basis permutation as a map of 0-based positions: row r of the source lands
/// on row perm[r] of the image.
struct Permutation {
  std::vector<std::size_t> map;

  std::size_t size() const noexcept { return map.size(); }

  /// P A P^T: entry (r, c) moves to (map[r], map[c]).
  template <typename Scalar>
  BasicDenseMatrix<Scalar> conjugate(const BasicDenseMatrix<Scalar>& a) const {
    if (a.rows() != map.size() || a.cols() != map.size())
      throw DimensionMismatch("Permutation::conjugate: size mismatch");
    BasicDenseMatrix<Scalar> out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) out(map[r], map[c]) = a(r, c);
    return out;
  }

  /// P v.
  template <typename T>
  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[map[k]] = v[k];
    return out;
  }

  Permutation inverse() const {
    Permutation p{std::vector<std::size_t>(map.size())};
    for (std::size_t k = 0; k < map.size(); ++k) p.map[map[k]] = k;
    return p;
  }

  DenseMatrix to_dense() const {
    DenseMatrix out(map.size(), map.size());
    for (std::size_t k = 0; k < map.size(); ++k) out(map[k], k) = 1.0;
    return out;
  }
};

/// The +i <-> -i swap, i.e. positions 2k-1 <-> 2k. It is an involution.
inline Permutation block_swap(std::size_t dim) {
  Permutation p{std::vector<std::size_t>(dim)};
  for (std::size_t k = 0; k < dim; ++k) p.map[k] = (k % 2 == 0) ? k + 1 : k - 1;
  return p;
}

/// Result of mapping a zig-zag matrix onto the GZZ class.
///
/// ZZ variant: perm.conjugate(to_dense(model)) == to_dense(Z).
/// TZ variant: perm.conjugate(to_dense(gzz_transpose(model))) == to_dense(Z).
struct ZigZagEmbedding {
  GzzHamiltonian model;
  Permutation perm;
  bool transposed = false;
};

/// Appends a zero row and column: a gains a trailing 0 and c a trailing 0.
inline ZigZagHamiltonian embed_odd(const ZigZagHamiltonian& z) {
  if (z.dim() % 2 == 0) return z;
  auto a = z.a();
  auto c = z.c();
  a.push_back(0.0);
  c.push_back(0.0);
  return ZigZagHamiltonian::create(z.variant(), std::move(a), std::move(c));
}

/// Odd-dimensional GZZ data (labels +1, -1, ..., +m; -m absent) embedded into
/// dimension 2m with lambda_-m = 0 and no couplings into column -m.
inline GzzHamiltonian embed_odd(std::vector<double> lambda_plus, std::vector<double> lambda_minus,
                                std::vector<Coupling> couplings) {
  if (lambda_plus.empty() || lambda_minus.size() + 1 != lambda_plus.size()) {
    throw ModelError("odd GZZ embedding needs m lambda_plus and m-1 lambda_minus entries");
  }
  const int m = static_cast<int>(lambda_plus.size());
  for (const auto& c : couplings) {
    if (c.j == m && c.value != 0.0)
      throw ModelError("odd GZZ embedding: column -" + std::to_string(m) + " does not exist");
  }
  lambda_minus.push_back(0.0);
  return GzzHamiltonian::create(std::move(lambda_plus), std::move(lambda_minus),
                                std::move(couplings));
}

/// Zig-zag matrix of even dimension 2m -> GZZ model with couplings only at
/// j in {i, i+1}: a interleaves into (lambda_-1, lambda_+1, lambda_-2, ...),
/// c_{2i-1} = n_ii, c_{2i} = n_{i,i+1}.
inline ZigZagEmbedding zz_to_gzz(const ZigZagHamiltonian& z) {
  if (z.dim() % 2 != 0) {
    throw DimensionMismatch("zz_to_gzz: dimension " + std::to_string(z.dim()) +
                            " is odd; embed it first");
  }
  const int m = static_cast<int>(z.dim() / 2);
  std::vector<double> lp(m), lm(m);
  for (int i = 1; i <= m; ++i) {
    lm[i - 1] = z.a()[2 * i - 2];
    lp[i - 1] = z.a()[2 * i - 1];
  }
  std::vector<Coupling> couplings;
  for (int i = 1; i <= m; ++i) {
    couplings.push_back({i, i, z.c()[2 * i - 2]});
    if (i < m) couplings.push_back({i, i + 1, z.c()[2 * i - 1]});
  }
  return {GzzHamiltonian::from_sorted(std::move(lp), std::move(lm), std::move(couplings)),
          block_swap(z.dim()), z.variant() == ZigZagVariant::TZ};
}

/// Inverse of zz_to_gzz. Throws PatternTooWide if a coupling lies outside
/// j in {i, i+1}.
inline ZigZagHamiltonian gzz_to_zz(const GzzHamiltonian& h, ZigZagVariant variant) {
  for (const auto& c : h.couplings()) {
    if (c.j != c.i && c.j != c.i + 1) {
      throw PatternTooWide("coupling (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                           ") is outside the zig-zag band j in {i, i+1}");
    }
  }
  const int m = h.m();
  std::vector<double> a(2 * m), c(m > 0 ? 2 * m - 1 : 0);
  for (int i = 1; i <= m; ++i) {
    a[2 * i - 2] = h.lambda_minus(i);
    a[2 * i - 1] = h.lambda_plus(i);
    c[2 * i - 2] = h.coupling(i, i);
    if (i < m) c[2 * i - 1] = h.coupling(i, i + 1);
  }
  return ZigZagHamiltonian::create(variant, std::move(a), std::move(c));
}

}  // namespace gzz
