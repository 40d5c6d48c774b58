#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "gzz/errors.hpp"

namespace gzz {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

/// Row-major dense matrix. Used for explicit output (Theta, Omega,
/// propagators) and by the brute-force oracle; structured operations never
/// allocate one.
template <typename Scalar>
class BasicDenseMatrix {
public:
  using value_type = Scalar;

  BasicDenseMatrix() = default;

  BasicDenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Scalar{}) {}

  BasicDenseMatrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw DimensionMismatch("dense matrix: " + std::to_string(rows_) + "x" +
                              std::to_string(cols_) + " needs " +
                              std::to_string(rows_ * cols_) + " entries, got " +
                              std::to_string(entries_.size()));
    }
  }

  BasicDenseMatrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionMismatch("dense matrix: ragged initializer");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static BasicDenseMatrix identity(std::size_t n) {
    BasicDenseMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) out(k, k) = Scalar{1};
    return out;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Scalar> entries() const noexcept { return entries_; }
  std::span<Scalar> entries() noexcept { return entries_; }
  std::span<const Scalar> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

  BasicDenseMatrix transposed() const {
    BasicDenseMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  friend bool operator==(const BasicDenseMatrix&, const BasicDenseMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

using DenseMatrix = BasicDenseMatrix<double>;
using ComplexMatrix = BasicDenseMatrix<std::complex<double>>;

template <typename Scalar>
double frobenius_norm(const BasicDenseMatrix<Scalar>& a) {
  double sum = 0.0;
  for (const auto& x : a.entries()) sum += std::norm(x);
  return std::sqrt(sum);
}

template <typename Scalar>
double max_abs(const BasicDenseMatrix<Scalar>& a) {
  double best = 0.0;
  for (const auto& x : a.entries()) best = std::max(best, static_cast<double>(std::abs(x)));
  return best;
}

/// Frobenius norm of a - b.
template <typename Scalar>
double frobenius_distance(const BasicDenseMatrix<Scalar>& a, const BasicDenseMatrix<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("frobenius_distance: shape mismatch");
  double sum = 0.0;
  auto x = a.entries();
  auto y = b.entries();
  for (std::size_t k = 0; k < x.size(); ++k) sum += std::norm(x[k] - y[k]);
  return std::sqrt(sum);
}

inline ComplexMatrix to_complex(const DenseMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.entries().size(); ++k) out.entries()[k] = a.entries()[k];
  return out;
}

}  // namespace gzz
