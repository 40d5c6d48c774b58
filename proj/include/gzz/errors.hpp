#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gzz {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// Malformed model data (bad sizes, out-of-range indices, non-finite values).
class ModelError : public Error {
public:
  using Error::Error;
};

/// A diagonal entry (or elimination pivot) that blocks inversion.
class SingularMatrix : public Error {
public:
  SingularMatrix(std::string what, std::vector<int> positions)
      : Error(std::move(what)), positions_(std::move(positions)) {}

  /// 1-based linear positions of the offending diagonal entries / pivots.
  const std::vector<int>& positions() const noexcept { return positions_; }

private:
  std::vector<int> positions_;
};

/// Raised when a coupling joins two (numerically) equal eigenvalues, i.e. the
/// matrix carries a Jordan block.
class NonDiagonalizable : public Error {
public:
  NonDiagonalizable(std::string what, std::vector<std::pair<int, int>> pairs)
      : Error(std::move(what)), pairs_(std::move(pairs)) {}

  /// (i, j) block pairs for GZZ models, (k, k+1) index pairs for zig-zag models.
  const std::vector<std::pair<int, int>>& pairs() const noexcept { return pairs_; }

private:
  std::vector<std::pair<int, int>> pairs_;
};

class InvalidWeight : public Error {
public:
  using Error::Error;
};

class PatternTooWide : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class GenerationError : public Error {
public:
  using Error::Error;
};

}  // namespace gzz
