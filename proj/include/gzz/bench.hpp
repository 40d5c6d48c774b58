#pragma once

// Structured-vs-dense timing harness. Reports per-call nanoseconds (minimum
// over repetitions, each repetition a batch long enough to time reliably)
// and fits log-log scaling exponents.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gzz/algebra.hpp"
#include "gzz/dense.hpp"
#include "gzz/generator.hpp"
#include "gzz/io.hpp"
#include "gzz/model.hpp"
#include "gzz/oracle.hpp"
#include "gzz/spectral.hpp"

namespace gzz::bench {

struct BenchRow {
  std::size_t dim = 0;
  std::string op;
  double structured_ns = 0.0;
  std::optional<double> dense_ns;
};

struct BenchLimits {
  std::size_t structured_max = 4096;
  std::size_t dense_max = 512;
  std::size_t dense_eigensystem_max = 128;
};

inline const std::vector<std::string>& default_ops() {
  static const std::vector<std::string> ops{"inverse", "eigensystem", "mul"};
  return ops;
}

namespace detail {

inline double sink = 0.0;

/// Minimum per-call time over `repetitions` batches of at least ~2 ms each.
inline double time_ns(const std::function<double()>& fn, int repetitions) {
  using clock = std::chrono::steady_clock;
  sink += fn();  // warm-up, excluded
  const auto t0 = clock::now();
  sink += fn();
  const double single = std::chrono::duration<double, std::nano>(clock::now() - t0).count();
  const std::size_t batch =
      std::max<std::size_t>(1, static_cast<std::size_t>(2e6 / std::max(single, 1.0)));
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, repetitions); ++r) {
    const auto start = clock::now();
    for (std::size_t k = 0; k < batch; ++k) sink += fn();
    const double ns = std::chrono::duration<double, std::nano>(clock::now() - start).count();
    best = std::min(best, ns / static_cast<double>(batch));
  }
  return best;
}

/// Eigenvectors by one dense solve per eigenvalue: (H - lambda_k I + e_k e_k^T) v = e_k
/// pins v_k = 1.
inline DenseMatrix dense_eigenvectors(const DenseMatrix& h) {
  const std::size_t n = h.rows();
  DenseMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    DenseMatrix a = h;
    const double lambda = h(k, k);
    for (std::size_t r = 0; r < n; ++r) a(r, r) -= lambda;
    a(k, k) += 1.0;
    DenseMatrix rhs(n, 1);
    rhs(k, 0) = 1.0;
    const auto v = oracle::dense_solve(std::move(a), std::move(rhs));
    for (std::size_t r = 0; r < n; ++r) out(r, k) = v(r, 0);
  }
  return out;
}

}  // namespace detail

/// Full-pattern model used for timing a given dimension.
inline GzzHamiltonian bench_model(std::size_t dim) {
  GeneratorConfig config;
  config.dim = static_cast<int>(dim);
  config.pattern = {PatternKind::full, 0};
  config.seed = 0x5eed0000u + dim;
  config.range = std::max(1.0, static_cast<double>(dim) / 4.0);
  return generate(config);
}

inline BenchRow run_one(const GzzHamiltonian& h, const std::string& op, int repetitions,
                        const BenchLimits& limits = {}) {
  BenchRow row;
  row.dim = h.dim();
  row.op = op;
  const std::size_t n = h.dim();
  if (op == "inverse") {
    row.structured_ns = detail::time_ns([&] { return gzz_inverse(h).lambda_plus(1); }, repetitions);
    if (n <= limits.dense_max) {
      const auto hd = to_dense(h);
      row.dense_ns = detail::time_ns([&] { return oracle::dense_inverse(hd)(0, 0); }, repetitions);
    }
  } else if (op == "eigensystem") {
    row.structured_ns =
        detail::time_ns([&] { return static_cast<double>(eigen_Q(h).entries().size()); },
                        repetitions);
    if (n <= limits.dense_eigensystem_max) {
      const auto hd = to_dense(h);
      row.dense_ns =
          detail::time_ns([&] { return detail::dense_eigenvectors(hd)(0, 0); }, repetitions);
    }
  } else if (op == "mul") {
    const auto other = gzz_inverse(h);
    row.structured_ns =
        detail::time_ns([&] { return gzz_mul(h, other).lambda_plus(1); }, repetitions);
    if (n <= limits.dense_max) {
      const auto hd = to_dense(h), od = to_dense(other);
      row.dense_ns = detail::time_ns([&] { return oracle::dense_mul(hd, od)(0, 0); }, repetitions);
    }
  } else {
    throw Error("unknown bench op '" + op + "' (expected inverse, eigensystem or mul)");
  }
  return row;
}

inline std::vector<BenchRow> run(const std::vector<std::size_t>& dims, int repetitions,
                                 const std::vector<std::string>& ops = default_ops(),
                                 const BenchLimits& limits = {}) {
  std::vector<BenchRow> rows;
  for (std::size_t dim : dims) {
    if (dim == 0 || dim % 2 != 0) throw Error("bench dims must be even and positive");
    if (dim > limits.structured_max)
      throw Error("bench dim " + std::to_string(dim) + " exceeds the structured cap");
    const auto h = bench_model(dim);
    for (const auto& op : ops) rows.push_back(run_one(h, op, repetitions, limits));
  }
  return rows;
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  const double nn = static_cast<double>(n);
  return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

inline std::string to_csv(const std::vector<BenchRow>& rows) {
  std::string out = "dim,op,structured_ns,dense_ns\n";
  for (const auto& r : rows) {
    out += std::to_string(r.dim) + "," + r.op + "," + io::format_double(r.structured_ns) + "," +
           (r.dense_ns ? io::format_double(*r.dense_ns) : std::string()) + "\n";
  }
  return out;
}

}  // namespace gzz::bench
