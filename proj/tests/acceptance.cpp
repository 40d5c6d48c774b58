// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are fixed
// below. Exit status is nonzero when any criterion fails, except the one
// listed in kKnownConflicts (its two requirements cannot both hold; the line
// still prints FAIL).

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "gzz/gzz.hpp"

using namespace gzz;

namespace {

constexpr double kClosureTol = 1e-12;
constexpr double kInverseTol = 1e-11;
constexpr double kEigenTol = 1e-12;
constexpr double kQuasiHermiticityTol = 1e-12;
constexpr double kRankOneTol = 1e-13;
constexpr double kHermitizationTol = 1e-10;
constexpr double kBandwidthTol = 1e-12;
constexpr double kZzResidualTol = 1e-12;
constexpr double kDriftTol = 1e-10;
constexpr double kPropagatorTol = 1e-8;
constexpr double kPropagatorNormTime = 20.0;
constexpr double kClosureSeconds = 5.0;
constexpr double kCompletenessSeconds = 60.0;
constexpr double kStructuredExponentMax = 2.3;
constexpr double kDenseExponentMin = 2.7;

const std::set<int> kKnownConflicts{8};

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double corpus_range(int dim) { return std::max(1.0, dim / 4.0); }

GzzHamiltonian corpus_model(int dim, const char* pattern, std::uint64_t seed, bool distinct = false) {
  GeneratorConfig c{dim, PatternSpec::parse(pattern), seed, 0.1, corpus_range(dim)};
  c.distinct = distinct;
  return generate(c);
}

const char* pattern_for(std::uint64_t k) {
  static const char* patterns[] = {"full", "zigzag", "banded:1", "banded:2"};
  return patterns[k % 4];
}

DenseMatrix diag(const std::vector<double>& d) {
  DenseMatrix out(d.size(), d.size());
  for (std::size_t k = 0; k < d.size(); ++k) out(k, k) = d[k];
  return out;
}

// 1. Closure
Outcome closure() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = 0.0;
  int pattern_failures = 0, cases = 0;
  for (int dim : {2, 4, 8, 16}) {
    for (std::uint64_t k = 0; k < 200; ++k) {
      const auto a = corpus_model(dim, pattern_for(k), 1000 * dim + 2 * k);
      const auto b = corpus_model(dim, pattern_for(k + 1), 1000 * dim + 2 * k + 1);
      const auto prod = gzz_mul(a, b);
      const auto ref = oracle::dense_mul(to_dense(a), to_dense(b));
      worst = std::max(worst, frobenius_distance(to_dense(prod), ref) / frobenius_norm(ref));
      if (!pattern_includes(pattern_union(pattern(a), pattern(b)), pattern(prod))) ++pattern_failures;
      ++cases;
    }
  }
  const double secs = seconds_since(t0);
  o.pass = worst <= kClosureTol && pattern_failures == 0 && secs < kClosureSeconds;
  o.detail = std::to_string(cases) + " pairs, max rel err " + fmt("%.2e", worst) +
             ", pattern violations " + std::to_string(pattern_failures) + ", " +
             fmt("%.2f", secs) + " s";
  return o;
}

// 2. Inverse
Outcome inverse() {
  Outcome o;
  double worst = 0.0;
  int cases = 0;
  for (int dim : {2, 4, 8, 16}) {
    for (std::uint64_t k = 0; k < 200; ++k) {
      const auto a = corpus_model(dim, pattern_for(k), 1000 * dim + 2 * k);
      const auto id = DenseMatrix::identity(dim);
      const auto right = to_dense(gzz_mul(a, gzz_inverse(a)));
      const auto left = to_dense(gzz_mul(gzz_inverse(a), a));
      worst = std::max({worst, frobenius_distance(right, id) / frobenius_norm(id),
                        frobenius_distance(left, id) / frobenius_norm(id)});
      ++cases;
    }
  }
  o.pass = worst <= kInverseTol;
  o.detail = std::to_string(cases) + " models, max rel err " + fmt("%.2e", worst);
  return o;
}

// 3. Eigensystem and Jordan rejection
Outcome eigensystem() {
  Outcome o;
  double worst_q = 0.0, worst_qt = 0.0;
  int cases = 0;
  for (int dim : {2, 4, 8, 16, 32, 64}) {
    for (std::uint64_t k = 0; k < 20; ++k) {
      const auto h = corpus_model(dim, pattern_for(k), 3000 * dim + k);
      const auto hd = to_dense(h);
      const double hn = frobenius_norm(hd);
      const auto lam = diag(h.diagonal());
      const auto q = to_dense(eigen_Q(h));
      const auto qt = to_dense(eigen_Qtilde(h));
      worst_q = std::max(worst_q, frobenius_distance(oracle::dense_mul(hd, q),
                                                     oracle::dense_mul(q, lam)) / hn);
      worst_qt = std::max(worst_qt, frobenius_distance(oracle::dense_mul(hd.transposed(), qt),
                                                       oracle::dense_mul(qt, lam)) / hn);
      ++cases;
    }
  }
  int rejected = 0;
  const int injections = 50;
  Rng rng(77);
  for (int k = 0; k < injections; ++k) {
    const int dim = 2 * (1 + k % 8);
    const auto base = corpus_model(dim, "full", 5000 + k);
    const auto& c = base.couplings()[static_cast<std::size_t>(rng.uniform01() * base.couplings().size())];
    auto lp = base.lambda_plus();
    lp[c.i - 1] = base.lambda_minus(c.j);
    const auto bad = GzzHamiltonian::create(lp, base.lambda_minus(), base.couplings());
    bool all = !validate(bad).jordan_pairs.empty();
    for (const auto& attempt : std::vector<std::function<void()>>{
             [&] { eigen_Q(bad); }, [&] { eigen_Qtilde(bad); },
             [&] { build_theta(bad, WeightVector::uniform(bad.dim())); }}) {
      try {
        attempt();
        all = false;
      } catch (const NonDiagonalizable&) {
      }
    }
    if (all) ++rejected;
  }
  o.pass = worst_q <= kEigenTol && worst_qt <= kEigenTol && rejected == injections;
  o.detail = std::to_string(cases) + " models up to dim 64, max |HQ-QL|/|H| " + fmt("%.2e", worst_q) +
             ", max |H^T Qt - Qt L|/|H| " + fmt("%.2e", worst_qt) + ", Jordan rejected " +
             std::to_string(rejected) + "/" + std::to_string(injections);
  return o;
}

// 4. Metric family
Outcome metric_family() {
  Outcome o;
  Rng rng(404);
  double worst_res = 0.0, worst_sum = 0.0;
  int not_positive = 0, cases = 0;
  for (int dim : {2, 4, 8, 16, 32, 64}) {
    for (std::uint64_t k = 0; k < 20; ++k) {
      const auto h = corpus_model(dim, pattern_for(k), 4000 * dim + k);
      const auto w = random_weights(rng, h.dim());
      const auto metric = build_theta(h, w);
      worst_res = std::max(worst_res, quasi_hermiticity_residual(h, metric));
      worst_sum = std::max(worst_sum, frobenius_distance(metric_rank_one_sum(h, w), metric.theta()) /
                                          frobenius_norm(metric.theta()));
      if (!certify_positive(metric.theta()).positive) ++not_positive;
      ++cases;
    }
  }
  o.pass = worst_res <= kQuasiHermiticityTol && worst_sum <= kRankOneTol && not_positive == 0;
  o.detail = std::to_string(cases) + " metrics, max residual " + fmt("%.2e", worst_res) +
             ", rank-one vs triple product " + fmt("%.2e", worst_sum) + ", not positive " +
             std::to_string(not_positive);
  return o;
}

// 5. Completeness of the metric family
Outcome completeness() {
  Outcome o;
  const auto t0 = Clock::now();
  int wrong = 0, cases = 0;
  std::string first_wrong;
  for (int dim : {2, 4, 6, 8}) {
    for (std::uint64_t k = 0; k < 50; ++k) {
      const auto h = corpus_model(dim, pattern_for(k), 6000 * dim + k, true);
      const auto report = oracle::sylvester_metric_space(to_dense(h));
      if (report.nullspace_dim != static_cast<std::size_t>(dim)) {
        if (wrong++ == 0)
          first_wrong = " (dim " + std::to_string(dim) + " gave " +
                        std::to_string(report.nullspace_dim) + ")";
      }
      ++cases;
    }
  }
  const double secs = seconds_since(t0);
  o.pass = wrong == 0 && secs < kCompletenessSeconds;
  o.detail = std::to_string(cases) + " models, nullspace dim != 2m in " + std::to_string(wrong) +
             first_wrong + ", " + fmt("%.2f", secs) + " s";
  return o;
}

// 6. Hermitization
Outcome hermitization() {
  Outcome o;
  Rng rng(606);
  double worst = 0.0;
  int cases = 0;
  for (int dim : {2, 4, 8, 16, 32, 64}) {
    for (std::uint64_t k = 0; k < 20; ++k) {
      const auto h = corpus_model(dim, pattern_for(k), 3000 * dim + k);
      const auto f = dyson_factor(h, random_weights(rng, h.dim()));
      const auto hd = to_dense(h);
      const auto herm = oracle::dense_mul(oracle::dense_mul(f.omega, hd), f.omega_inverse);
      worst = std::max(worst, frobenius_distance(herm, diag(h.diagonal())) / frobenius_norm(hd));
      ++cases;
    }
  }
  o.pass = worst <= kHermitizationTol;
  o.detail = std::to_string(cases) + " models, max |W H W^-1 - L|/|H| " + fmt("%.2e", worst);
  return o;
}

// 7. Bandwidth
Outcome bandwidth_claims() {
  Outcome o;
  Rng rng(707);
  int violations = 0;
  std::size_t widest = 0, widest_permuted = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const int dim = 2 * (1 + static_cast<int>(k % 16));
    const auto h = corpus_model(dim, "zigzag", 7000 + k);
    const auto theta = build_theta(h, random_weights(rng, h.dim())).theta();
    const auto b = bandwidth(theta, kBandwidthTol);
    const auto bp = bandwidth(block_swap(h.dim()).conjugate(theta), kBandwidthTol);
    widest = std::max(widest, b);
    widest_permuted = std::max(widest_permuted, bp);
    if (b > 3 || bp > 2) ++violations;
  }
  o.pass = violations == 0;
  o.detail = "100 zig-zag models, max bandwidth " + std::to_string(widest) + " (limit 3), permuted " +
             std::to_string(widest_permuted) + " (limit 2), violations " + std::to_string(violations);
  return o;
}

// 8. Zig-zag formulas
Outcome zigzag_formulas() {
  Outcome o;
  double worst = 0.0;
  Rng rng(808);
  for (std::uint64_t k = 0; k < 100; ++k) {
    const int dim = 2 + static_cast<int>(k % 15);
    std::vector<double> a(dim), c(dim - 1);
    for (int r = 0; r < dim; ++r) {
      // neighbours kept at least 0.1 apart
      do a[r] = rng.uniform(-2, 2);
      while (r > 0 && std::abs(a[r] - a[r - 1]) < 0.1);
    }
    for (auto& x : c) x = rng.uniform(-1, 1);
    const auto variant = k % 2 ? ZigZagVariant::TZ : ZigZagVariant::ZZ;
    const auto z = ZigZagHamiltonian::create(variant, a, c);
    const auto d = to_dense(z);
    const auto v = to_dense(zz_eigen(z));
    worst = std::max(worst, frobenius_distance(oracle::dense_mul(d, v), oracle::dense_mul(v, diag(a))) /
                                frobenius_norm(d));
  }

  const auto tz = ZigZagHamiltonian::create(ZigZagVariant::TZ, {4, 3, 2, 1}, {1, 1, 1});
  const auto q = zz_eigen(tz).c();
  const auto qd = to_dense(zz_eigen(tz));
  const double q_residual =
      frobenius_distance(oracle::dense_mul(to_dense(tz), qd), oracle::dense_mul(qd, diag(tz.a())));
  const std::vector<double> literal{-1, -1, -1};
  const auto literal_matrix = to_dense(ZigZagHamiltonian::create(ZigZagVariant::TZ, {1, 1, 1, 1}, literal));
  const double literal_residual = frobenius_distance(
      oracle::dense_mul(to_dense(tz), literal_matrix), oracle::dense_mul(literal_matrix, diag(tz.a())));

  const bool residuals_ok = worst <= kZzResidualTol && q_residual <= kZzResidualTol;
  const bool literal_ok = q == literal;
  o.pass = residuals_ok && literal_ok;
  o.detail = "100 random ZZ/TZ, max residual " + fmt("%.2e", worst) + " (" +
             (residuals_ok ? "ok" : "exceeds tol") + "); a=(4,3,2,1) c=(1,1,1) gives q=(" +
             fmt("%g", q[0]) + "," + fmt("%g", q[1]) + "," + fmt("%g", q[2]) + ") with residual " +
             fmt("%.1e", q_residual) + ", required q=(-1,-1,-1) has residual " +
             fmt("%.3g", literal_residual);
  return o;
}

// 9. Dynamics
Outcome dynamics() {
  Outcome o;
  Rng rng(909);
  const auto times = sample_times(0.0, 10.0, 100);
  double worst_drift = 0.0, worst_prop = 0.0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    const int dim = 2 * (1 + static_cast<int>(k % 8));
    const auto h = corpus_model(dim, pattern_for(k), 9000 + k);
    const auto w = random_weights(rng, h.dim());
    std::vector<complex> amp(h.dim());
    for (auto& x : amp) x = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const auto traj = evolve(h, StateVector(amp), times, w);
    const double n0 = traj.theta_norms.front();
    for (double n : traj.theta_norms) worst_drift = std::max(worst_drift, std::abs(n - n0) / n0);

    const double hn = frobenius_norm(to_dense(h));
    for (double t : {0.25 * kPropagatorNormTime / hn, kPropagatorNormTime / hn}) {
      const auto ref =
          oracle::expm_series(oracle::dense_scale(to_complex(to_dense(h)), complex(0.0, -t)));
      worst_prop = std::max(worst_prop, frobenius_distance(propagator(h, t), ref) / frobenius_norm(ref));
    }
  }
  o.pass = worst_drift <= kDriftTol && worst_prop <= kPropagatorTol;
  o.detail = "50 triples x 101 samples, max drift " + fmt("%.2e", worst_drift) +
             ", propagator vs series (|H|t <= 20) " + fmt("%.2e", worst_prop);
  return o;
}

// 10. Performance
Outcome performance() {
  Outcome o;
  const std::vector<std::size_t> dims{64, 128, 256, 512, 1024};
  const auto rows = bench::run(dims, 3, {"inverse", "eigensystem"});
  std::vector<double> x, s_inv, s_eig, xd, d_inv;
  bool ordered = true;
  for (const auto& r : rows) {
    if (r.op == "inverse") {
      x.push_back(static_cast<double>(r.dim));
      s_inv.push_back(r.structured_ns);
      if (r.dense_ns) {
        xd.push_back(static_cast<double>(r.dim));
        d_inv.push_back(*r.dense_ns);
      }
    } else {
      s_eig.push_back(r.structured_ns);
    }
    if (r.dense_ns && !(r.structured_ns < *r.dense_ns)) ordered = false;
  }
  const double e_inv = bench::loglog_slope(x, s_inv);
  const double e_eig = bench::loglog_slope(x, s_eig);
  const double e_dense = bench::loglog_slope(xd, d_inv);
  o.pass = e_inv <= kStructuredExponentMax && e_eig <= kStructuredExponentMax &&
           e_dense >= kDenseExponentMin && ordered;
  o.detail = "exponents: structured inverse " + fmt("%.2f", e_inv) + ", structured eigensystem " +
             fmt("%.2f", e_eig) + " (64-1024), dense inverse " + fmt("%.2f", e_dense) +
             " (64-512); structured faster at every common dim: " + (ordered ? "yes" : "no");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"closure", closure},
      {"inverse", inverse},
      {"eigensystem", eigensystem},
      {"metric family", metric_family},
      {"completeness", completeness},
      {"hermitization", hermitization},
      {"bandwidth", bandwidth_claims},
      {"zig-zag formulas", zigzag_formulas},
      {"dynamics", dynamics},
      {"performance", performance},
  };
  int failed = 0, unexpected = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2d %-17s %s\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) {
      ++failed;
      if (!kKnownConflicts.count(id)) ++unexpected;
    }
  }
  std::printf("%d/%zu criteria pass", static_cast<int>(criteria.size()) - failed, criteria.size());
  if (failed > unexpected) std::printf("; %d failing by known conflict", failed - unexpected);
  std::printf("\n");
  return unexpected == 0 ? 0 : 1;
}
