#pragma once

// Full invariant sweep for one model: every closed-form result is compared
// with the dense oracle. Used by the `verify` CLI command and the tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gzz/algebra.hpp"
#include "gzz/dense.hpp"
#include "gzz/dynamics.hpp"
#include "gzz/io.hpp"
#include "gzz/metric.hpp"
#include "gzz/model.hpp"
#include "gzz/oracle.hpp"
#include "gzz/spectral.hpp"

namespace gzz {

enum class CheckStatus { pass, fail, skip };

struct CheckResult {
  std::string module;
  std::string name;
  CheckStatus status = CheckStatus::skip;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct VerifyReport {
  std::size_t dim = 0;
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::none_of(checks.begin(), checks.end(),
                        [](const CheckResult& c) { return c.status == CheckStatus::fail; });
  }

  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

struct VerifyOptions {
  std::optional<WeightVector> weights;
  double bandwidth_tol = 1e-12;
};

namespace detail {

inline const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
  }
  return "skip";
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

class Recorder {
public:
  explicit Recorder(VerifyReport& report) : report_(report) {}

  /// Records measured <= tolerance.
  void at_most(const char* module, const char* name, double measured, double tolerance,
               std::string note = {}) {
    const bool ok = std::isfinite(measured) && measured <= tolerance;
    report_.checks.push_back({module, name, ok ? CheckStatus::pass : CheckStatus::fail, measured,
                              tolerance, std::move(note)});
  }

  void at_least(const char* module, const char* name, double measured, double tolerance,
                std::string note = {}) {
    const bool ok = std::isfinite(measured) && measured >= tolerance;
    report_.checks.push_back({module, name, ok ? CheckStatus::pass : CheckStatus::fail, measured,
                              tolerance, std::move(note)});
  }

  void holds(const char* module, const char* name, bool ok, std::string note = {}) {
    report_.checks.push_back({module, name, ok ? CheckStatus::pass : CheckStatus::fail,
                              ok ? 0.0 : 1.0, 0.0, std::move(note)});
  }

  void skip(const char* module, const char* name, std::string why) {
    report_.checks.push_back({module, name, CheckStatus::skip, 0.0, 0.0, std::move(why)});
  }

private:
  VerifyReport& report_;
};

inline DenseMatrix coupling_part(const DenseMatrix& d) {
  DenseMatrix n = d;
  for (std::size_t k = 0; k < n.rows(); ++k) n(k, k) = 0.0;
  return n;
}

inline DenseMatrix diag_matrix(const std::vector<double>& d) {
  DenseMatrix out(d.size(), d.size());
  for (std::size_t k = 0; k < d.size(); ++k) out(k, k) = d[k];
  return out;
}

inline double relative(double err, double scale) { return scale == 0.0 ? err : err / scale; }

/// min over columns of |<u_k, v_k>| / (|u_k| |v_k|).
inline double min_collinearity(const DenseMatrix& u, const DenseMatrix& v) {
  double worst = 1.0;
  for (std::size_t c = 0; c < u.cols(); ++c) {
    double uv = 0.0, uu = 0.0, vv = 0.0;
    for (std::size_t r = 0; r < u.rows(); ++r) {
      uv += u(r, c) * v(r, c);
      uu += u(r, c) * u(r, c);
      vv += v(r, c) * v(r, c);
    }
    worst = std::min(worst, std::abs(uv) / std::sqrt(uu * vv));
  }
  return worst;
}

inline bool zigzag_band(const GzzHamiltonian& h) {
  return std::all_of(h.couplings().begin(), h.couplings().end(),
                     [](const Coupling& c) { return c.j == c.i || c.j == c.i + 1; });
}

inline bool all_distinct(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  for (std::size_t k = 1; k < values.size(); ++k)
    if (nearly_equal(values[k - 1], values[k])) return false;
  return true;
}

inline void check_zigzag(Recorder& rec, const ZigZagHamiltonian& z) {
  const auto zd = to_dense(z);
  const double znorm = frobenius_norm(zd);
  ZigZagHamiltonian v;
  try {
    v = zz_eigen(z);
  } catch (const NonDiagonalizable& e) {
    rec.holds("spectral", "spectral.zz_eigen_residual", false, e.what());
    return;
  }
  const auto vd = to_dense(v);
  const auto residual = frobenius_distance(oracle::dense_mul(zd, vd),
                                           oracle::dense_mul(vd, diag_matrix(z.a())));
  rec.at_most("spectral", "spectral.zz_eigen_residual", relative(residual, znorm), 1e-12);

  const auto embedded = zz_to_gzz(z);
  const auto& h = embedded.model;
  const auto image = embedded.transposed ? to_dense(gzz_transpose(h)) : to_dense(h);
  rec.holds("structured-algebra", "algebra.zz_conjugation",
            embedded.perm.conjugate(image) == zd, "P dense(H) P^T == dense(Z) entrywise");

  const auto factor = embedded.transposed ? eigen_Qtilde(h) : eigen_Q(h);
  const auto permuted = embedded.perm.conjugate(to_dense(factor));
  rec.at_least("spectral", "spectral.zz_gzz_collinearity", min_collinearity(permuted, vd),
               1.0 - 1e-10);
}

}  // namespace detail

/// Runs every invariant on a GZZ model. `zz` is the zig-zag form when the
/// model came from (or maps onto) one.
inline VerifyReport verify_model(const GzzHamiltonian& h, const VerifyOptions& options = {},
                                 const std::optional<ZigZagHamiltonian>& zz = std::nullopt) {
  using detail::relative;
  VerifyReport report;
  report.dim = h.dim();
  detail::Recorder rec(report);
  const std::size_t n = h.dim();
  const auto hd = to_dense(h);
  const double hnorm = frobenius_norm(hd);
  const auto identity = DenseMatrix::identity(n);
  const auto weights = options.weights ? *options.weights : WeightVector::uniform(n);
  if (weights.size() != n) throw InvalidWeight("verify: weight vector size does not match model");

  // model-core
  rec.holds("model-core", "model.round_trip", gzz_from_dense(hd) == h,
            "gzz_from_dense(to_dense(H)) == H");
  {
    const auto nd = detail::coupling_part(hd);
    rec.at_most("model-core", "model.nilpotency", frobenius_norm(oracle::dense_mul(nd, nd)), 0.0,
                "||N^2||_F");
  }
  const auto report_v = validate(h);
  rec.holds("model-core", "model.diagonalizable", report_v.diagonalizable(),
            report_v.diagonalizable()
                ? ""
                : std::to_string(report_v.jordan_pairs.size()) + " Jordan pair(s)");

  // structured-algebra
  {
    const bool invertible = report_v.invertible();
    const auto other = invertible ? gzz_inverse(h) : gzz_add(h, GzzHamiltonian::identity(h.m()));
    double worst = 0.0;
    bool included = true, nilpotent = true;
    for (const auto& [a, b] : {std::pair{&h, &other}, std::pair{&other, &h}, std::pair{&h, &h}}) {
      const auto prod = gzz_mul(*a, *b);
      const auto dense = oracle::dense_mul(to_dense(*a), to_dense(*b));
      worst = std::max(worst, relative(frobenius_distance(to_dense(prod), dense),
                                       frobenius_norm(dense)));
      included &= pattern_includes(pattern_union(pattern(*a), pattern(*b)), pattern(prod));
      const auto np = detail::coupling_part(to_dense(prod));
      nilpotent &= frobenius_norm(oracle::dense_mul(np, np)) == 0.0;
    }
    rec.at_most("structured-algebra", "algebra.closure", worst, 1e-12);
    rec.holds("structured-algebra", "algebra.pattern_inclusion", included);
    rec.holds("structured-algebra", "algebra.nilpotency_preserved", nilpotent);
    if (invertible) {
      const auto inv = gzz_inverse(h);
      const double left = frobenius_distance(to_dense(gzz_mul(h, inv)), identity);
      const double right = frobenius_distance(to_dense(gzz_mul(inv, h)), identity);
      rec.at_most("structured-algebra", "algebra.inverse",
                  relative(std::max(left, right), std::sqrt(static_cast<double>(n))), 1e-12);
    } else {
      rec.skip("structured-algebra", "algebra.inverse", "zero diagonal entry");
    }
    rec.holds("structured-algebra", "algebra.transpose",
              to_dense(gzz_transpose(h)) == hd.transposed());
  }

  const bool banded = detail::zigzag_band(h);
  std::optional<ZigZagHamiltonian> zz_form = zz;
  if (!zz_form && banded && h.m() > 0) zz_form = gzz_to_zz(h, ZigZagVariant::ZZ);

  if (!report_v.diagonalizable()) {
    for (const char* name :
         {"spectral.eigen_Q_residual", "spectral.eigen_Qtilde_residual", "spectral.factor_inverse",
          "spectral.factor_pattern", "spectral.eigenpair_residual", "metric.quasi_hermiticity",
          "metric.rank_one_consistency", "metric.positive", "metric.factorization",
          "metric.hermitization", "metric.completeness", "dynamics.theta_norm_drift",
          "dynamics.propagator_vs_expm", "dynamics.group_law", "dynamics.inverse",
          "dynamics.isospectral"}) {
      rec.skip(name[0] == 's' ? "spectral" : name[0] == 'm' ? "metric" : "dynamics", name,
               "model is not diagonalizable");
    }
    if (zz_form) detail::check_zigzag(rec, *zz_form);
  } else {
    // spectral
    const auto q = eigen_Q(h);
    const auto qt = eigen_Qtilde(h);
    const auto qd = to_dense(q);
    const auto qtd = to_dense(qt);
    const auto lambda = detail::diag_matrix(h.diagonal());
    rec.at_most("spectral", "spectral.eigen_Q_residual",
                relative(frobenius_distance(oracle::dense_mul(hd, qd), oracle::dense_mul(qd, lambda)),
                         hnorm),
                1e-12);
    rec.at_most("spectral", "spectral.eigen_Qtilde_residual",
                relative(frobenius_distance(oracle::dense_mul(hd.transposed(), qtd),
                                            oracle::dense_mul(qtd, lambda)),
                         hnorm),
                1e-12);
    rec.at_most("spectral", "spectral.factor_inverse",
                std::max(frobenius_distance(oracle::dense_mul(qd, to_dense(factor_inverse(q))), identity),
                         frobenius_distance(oracle::dense_mul(qtd, to_dense(factor_inverse(qt))),
                                            identity)),
                1e-14);
    {
      CouplingPattern fp;
      for (const auto& e : q.entries()) fp.emplace_back(e.i, e.j);
      rec.holds("spectral", "spectral.factor_pattern", fp == pattern(h));
    }
    {
      double worst = 0.0;
      const auto eig = spectrum(h);
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> v(n);
        for (std::size_t r = 0; r < n; ++r) v[r] = qd(r, k);
        auto hv = oracle::dense_apply(hd, v);
        double err = 0.0;
        for (std::size_t r = 0; r < n; ++r) err += std::pow(hv[r] - eig[k].value * v[r], 2);
        worst = std::max(worst, std::sqrt(err));
      }
      rec.at_most("spectral", "spectral.eigenpair_residual", relative(worst, hnorm), 1e-12,
                  "max_k ||(H - lambda_k) q_k|| / ||H||");
    }
    if (zz_form) detail::check_zigzag(rec, *zz_form);

    // metric
    const auto metric = build_theta(h, weights);
    const auto& theta = metric.theta();
    const double tnorm = frobenius_norm(theta);
    rec.at_most("metric", "metric.quasi_hermiticity", quasi_hermiticity_residual(hd, theta), 1e-12);
    rec.at_most("metric", "metric.rank_one_consistency",
                relative(frobenius_distance(theta, metric_rank_one_sum(h, weights)), tnorm), 1e-13);
    {
      const auto cert = certify_positive(theta);
      rec.holds("metric", "metric.positive", cert.positive && oracle::cholesky_positive(theta),
                "pivoted factorization and oracle Cholesky");
    }
    const auto dyson = dyson_factor(h, weights);
    rec.at_most("metric", "metric.factorization",
                relative(frobenius_distance(
                             oracle::dense_mul(dyson.omega.transposed(), dyson.omega), theta),
                         tnorm),
                1e-13);
    try {
      const auto omega_inv = oracle::dense_inverse(dyson.omega);
      const auto partner = oracle::dense_mul(oracle::dense_mul(dyson.omega, hd), omega_inv);
      rec.at_most("metric", "metric.hermitization",
                  relative(frobenius_distance(partner, lambda), hnorm), 1e-10,
                  "||Omega H Omega^-1 - Lambda|| / ||H||");
    } catch (const SingularMatrix& e) {
      rec.holds("metric", "metric.hermitization", false, e.what());
    }
    if (n <= 16 && detail::all_distinct(h.diagonal())) {
      const auto space = oracle::sylvester_metric_space(hd);
      DenseMatrix stacked(n * n, space.basis.size() + 1);
      for (std::size_t b = 0; b < space.basis.size(); ++b)
        for (std::size_t k = 0; k < n * n; ++k) stacked(k, b) = space.basis[b].entries()[k];
      for (std::size_t k = 0; k < n * n; ++k)
        stacked(k, space.basis.size()) = theta.entries()[k] / max_abs(theta);
      const bool in_span = oracle::matrix_rank(stacked, 1e-10) == space.nullspace_dim;
      rec.holds("metric", "metric.completeness", space.nullspace_dim == n && in_span,
                "nullspace dim " + std::to_string(space.nullspace_dim) + ", expected " +
                    std::to_string(n) + (in_span ? "" : "; Theta outside nullspace"));
    } else {
      rec.skip("metric", "metric.completeness",
               n > 16 ? "dimension above oracle cap 16" : "spectrum has repeated eigenvalues");
    }
    if (banded) {
      rec.at_most("metric", "metric.bandwidth_signed_basis",
                  static_cast<double>(bandwidth(theta, options.bandwidth_tol)), 3.0);
      rec.at_most("metric", "metric.bandwidth_permuted",
                  static_cast<double>(bandwidth(block_swap(n).conjugate(theta), options.bandwidth_tol)),
                  2.0);
    }

    // dynamics
    {
      std::vector<complex> psi0(n);
      for (std::size_t k = 0; k < n; ++k)
        psi0[k] = complex(1.0 / (1.0 + k), (k % 3 == 0 ? 0.5 : -0.25));
      const auto traj = evolve(h, StateVector(psi0), sample_times(0.0, 10.0, 100), weights);
      double drift = 0.0;
      for (double x : traj.theta_norms)
        drift = std::max(drift, std::abs(x - traj.theta_norms.front()));
      rec.at_most("dynamics", "dynamics.theta_norm_drift",
                  relative(drift, traj.theta_norms.front()), 1e-10, "t in [0, 10], 101 samples");

      const double t = hnorm == 0.0 ? 1.0 : 20.0 / hnorm;
      const auto u = propagator(h, t);
      const auto expm = oracle::expm_series(
          oracle::dense_scale(to_complex(hd), complex(0.0, -t)));
      rec.at_most("dynamics", "dynamics.propagator_vs_expm",
                  relative(frobenius_distance(u, expm), frobenius_norm(u)), 1e-8,
                  "||H|| t = 20");

      const double t1 = 0.37 * t, t2 = 0.81 * t;
      const auto group = oracle::dense_mul(propagator(h, t1), propagator(h, t2));
      rec.at_most("dynamics", "dynamics.group_law",
                  relative(frobenius_distance(group, propagator(h, t1 + t2)), frobenius_norm(group)),
                  1e-10);
      const auto back = oracle::dense_mul(propagator(h, -t), u);
      rec.at_most("dynamics", "dynamics.inverse",
                  relative(frobenius_distance(back, ComplexMatrix::identity(n)),
                           std::sqrt(static_cast<double>(n))),
                  1e-10);

      const auto omega = to_complex(dyson.omega);
      const auto phi0 = oracle::dense_apply(omega, psi0);
      double worst = 0.0, scale = l2_norm_sq(phi0);
      const auto diag = h.diagonal();
      for (std::size_t s = 0; s < traj.times.size(); ++s) {
        const auto phi = oracle::dense_apply(omega, traj.states[s].amplitudes());
        double err = 0.0;
        for (std::size_t k = 0; k < n; ++k)
          err += std::norm(phi[k] - std::exp(complex(0.0, -diag[k] * traj.times[s])) * phi0[k]);
        worst = std::max(worst, std::sqrt(err));
      }
      rec.at_most("dynamics", "dynamics.isospectral", relative(worst, std::sqrt(scale)), 1e-9,
                  "Omega psi(t) vs exp(-i Lambda t) Omega psi(0)");
    }
  }

  // oracle
  if (report_v.invertible() && n > 0) {
    try {
      const auto inv = oracle::dense_inverse(hd);
      rec.at_most("oracle", "oracle.elimination_self_check",
                  frobenius_distance(oracle::dense_mul(hd, inv), identity), 1e-11,
                  "||A inv(A) - I||_F");
    } catch (const SingularMatrix& e) {
      rec.holds("oracle", "oracle.elimination_self_check", false, e.what());
    }
  } else {
    rec.skip("oracle", "oracle.elimination_self_check", "model is singular");
  }
  return report;
}

/// Zig-zag input: odd dimensions are embedded first, then the GZZ form is
/// verified alongside the zig-zag specific checks.
inline VerifyReport verify_model(const ZigZagHamiltonian& z, const VerifyOptions& options = {}) {
  const auto even = embed_odd(z);
  const auto embedded = zz_to_gzz(even);
  VerifyOptions opts = options;
  if (opts.weights) {
    // Weights arrive in zig-zag order; move them to signed-index order.
    if (opts.weights->size() != even.dim())
      throw InvalidWeight("verify: weight vector size does not match model");
    opts.weights = WeightVector::create(embedded.perm.inverse().apply(opts.weights->kappa_sq()));
  }
  // For TZ input the sweep runs on H with Z = P H^T P^T; zig-zag checks use Z.
  return verify_model(embedded.model, opts, even);
}

inline std::string to_json(const VerifyReport& report) {
  std::string out = "{\"format\":\"verify/v1\",\"dim\":" + std::to_string(report.dim) +
                    ",\"passed\":" + (report.passed() ? "true" : "false") + ",\"checks\":[";
  for (std::size_t k = 0; k < report.checks.size(); ++k) {
    const auto& c = report.checks[k];
    out += std::string(k ? ",\n  " : "\n  ") + "{\"module\":\"" + c.module + "\",\"name\":\"" +
           c.name + "\",\"status\":\"" + detail::status_name(c.status) +
           "\",\"measured\":" + io::format_double(c.measured) +
           ",\"tolerance\":" + io::format_double(c.tolerance) + ",\"note\":\"" +
           detail::json_escape(c.note) + "\"}";
  }
  return out + "\n]}\n";
}

}  // namespace gzz
