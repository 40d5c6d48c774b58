#pragma once

// Subcommand implementations for the gzz command-line tool. Each command
// writes its primary output to `out` (or --out) and returns the exit code:
// 0 pass, 1 verification/model failure, 2 usage or parse error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "gzz/gzz.hpp"

namespace gzz::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

struct Options {
  // shared
  std::string model_path;
  std::string out_path;
  std::string kappa = "uniform:1";
  double tol = 1e-12;
  // gen
  int dim = 4;
  std::string pattern = "full";
  std::uint64_t seed = 0;
  double gap = 0.1;
  double range = 1.0;
  bool distinct = false;
  bool embed_odd = false;
  // evolve
  double t0 = 0.0;
  double t1 = 10.0;
  std::size_t steps = 100;
  std::string psi0 = "uniform";
  // bench
  std::vector<std::size_t> dims{2, 4, 8, 16, 32, 64};
  std::vector<std::string> ops{"inverse", "eigensystem", "mul"};
  int repetitions = 3;
  // convert
  std::string target = "gzz";
  std::string variant = "ZZ";
};

namespace detail {

inline void emit(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.out_path.empty())
    out << text;
  else
    io::write_file(opt.out_path, text);
}

inline io::Model load_model(const Options& opt) {
  if (opt.model_path.empty()) throw ParseError("missing model file argument");
  return io::read_model(io::read_file(opt.model_path));
}

/// --kappa uniform:VALUE or a weight file.
inline WeightVector parse_weights(const std::string& arg, std::size_t dim) {
  if (arg.rfind("uniform:", 0) == 0) {
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(arg.substr(8), &used);
      if (used != arg.size() - 8) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ParseError("--kappa: cannot parse '" + arg + "'");
    }
    try {
      return WeightVector::uniform(dim, value);
    } catch (const InvalidWeight& e) {
      throw ParseError(std::string("--kappa: ") + e.what());
    }
  }
  auto values = io::read_weights(io::read_file(arg));
  if (values.size() != dim) {
    throw ParseError("--kappa: file has " + std::to_string(values.size()) +
                     " weights, model needs " + std::to_string(dim));
  }
  try {
    return WeightVector::create(std::move(values));
  } catch (const InvalidWeight& e) {
    throw ParseError(std::string("--kappa: ") + e.what());
  }
}

inline std::vector<complex> parse_state(const std::string& arg, std::size_t dim) {
  if (arg == "uniform") return std::vector<complex>(dim, complex(1.0, 0.0));
  if (arg.rfind("basis:", 0) == 0) {
    std::size_t k = 0;
    try {
      k = std::stoul(arg.substr(6));
    } catch (const std::exception&) {
      throw ParseError("--psi0: cannot parse '" + arg + "'");
    }
    if (k < 1 || k > dim) throw ParseError("--psi0: basis index out of range 1.." + std::to_string(dim));
    std::vector<complex> v(dim);
    v[k - 1] = 1.0;
    return v;
  }
  const auto j = nlohmann::json::parse(io::read_file(arg), nullptr, false);
  if (j.is_discarded() || !j.is_array() || j.size() != dim)
    throw ParseError("--psi0: expected a JSON array of " + std::to_string(dim) + " amplitudes");
  std::vector<complex> v;
  for (const auto& x : j) {
    if (x.is_number())
      v.emplace_back(x.get<double>(), 0.0);
    else if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number())
      v.emplace_back(x[0].get<double>(), x[1].get<double>());
    else
      throw ParseError("--psi0: amplitudes must be numbers or [re, im] pairs");
  }
  return v;
}

/// GZZ form of any model: zig-zag input is embedded when odd and permuted.
struct Resolved {
  GzzHamiltonian gzz;
  std::optional<ZigZagHamiltonian> zz;  // even-dimensional zig-zag form
  Permutation perm;
  bool transposed = false;
};

inline Resolved resolve(const io::Model& model) {
  if (const auto* h = std::get_if<GzzHamiltonian>(&model)) return {*h, std::nullopt, {}, false};
  const auto even = embed_odd(std::get<ZigZagHamiltonian>(model));
  auto embedded = zz_to_gzz(even);
  return {std::move(embedded.model), even, std::move(embedded.perm), embedded.transposed};
}

}  // namespace detail

inline int cmd_gen(const Options& opt, std::ostream& out) {
  GeneratorConfig config;
  config.dim = opt.dim;
  config.pattern = PatternSpec::parse(opt.pattern);
  config.seed = opt.seed;
  config.gap = opt.gap;
  config.range = opt.range;
  config.distinct = opt.distinct;
  config.embed_odd = opt.embed_odd;
  detail::emit(opt, out, io::write_model(generate(config)));
  return kPass;
}

inline int cmd_verify(const Options& opt, std::ostream& out) {
  const auto model = detail::load_model(opt);
  VerifyOptions vo;
  vo.bandwidth_tol = opt.tol;
  VerifyReport report;
  if (const auto* h = std::get_if<GzzHamiltonian>(&model)) {
    vo.weights = detail::parse_weights(opt.kappa, h->dim());
    report = verify_model(*h, vo);
  } else {
    const auto& z = std::get<ZigZagHamiltonian>(model);
    vo.weights = detail::parse_weights(opt.kappa, embed_odd(z).dim());
    report = verify_model(z, vo);
  }
  detail::emit(opt, out, to_json(report));
  return report.passed() ? kPass : kFail;
}

inline int cmd_spectrum(const Options& opt, std::ostream& out) {
  const auto model = detail::load_model(opt);
  std::string text = "{\"format\":\"spectrum/v1\",\"eigenvalues\":[";
  if (const auto* h = std::get_if<GzzHamiltonian>(&model)) {
    const auto eig = spectrum(*h);
    for (std::size_t k = 0; k < eig.size(); ++k)
      text += std::string(k ? "," : "") + "{\"label\":\"" + eig[k].label.label() +
              "\",\"value\":" + io::format_double(eig[k].value) + "}";
  } else {
    const auto eig = spectrum(std::get<ZigZagHamiltonian>(model));
    for (std::size_t k = 0; k < eig.size(); ++k)
      text += std::string(k ? "," : "") + "{\"label\":\"" + std::to_string(k + 1) +
              "\",\"value\":" + io::format_double(eig[k]) + "}";
  }
  text += "],\"diagonalizable\":";
  const bool ok = std::visit([](const auto& m) { return validate(m).diagonalizable(); }, model);
  text += ok ? "true}\n" : "false}\n";
  detail::emit(opt, out, text);
  return kPass;
}

inline int cmd_metric(const Options& opt, std::ostream& out) {
  const auto resolved = detail::resolve(detail::load_model(opt));
  const std::size_t n = resolved.gzz.dim();
  auto weights = detail::parse_weights(opt.kappa, n);
  io::ThetaReport report;
  DenseMatrix h;
  if (!resolved.zz) {
    report.theta = build_theta(resolved.gzz, weights).theta();
    h = to_dense(resolved.gzz);
  } else {
    // Weights and output in the zig-zag basis.
    const auto w = WeightVector::create(resolved.perm.inverse().apply(weights.kappa_sq()));
    const auto metric = resolved.transposed ? build_theta(gzz_transpose(resolved.gzz), w)
                                            : build_theta(resolved.gzz, w);
    report.theta = resolved.perm.conjugate(metric.theta());
    h = to_dense(*resolved.zz);
  }
  report.residual = quasi_hermiticity_residual(h, report.theta);
  report.positive = certify_positive(report.theta).positive;
  report.bandwidth = bandwidth(report.theta, opt.tol);
  detail::emit(opt, out, io::write_theta(report));
  return kPass;
}

inline int cmd_evolve(const Options& opt, std::ostream& out) {
  const auto resolved = detail::resolve(detail::load_model(opt));
  const std::size_t n = resolved.gzz.dim();
  auto weights = detail::parse_weights(opt.kappa, n);
  auto psi0 = detail::parse_state(opt.psi0, n);
  if (resolved.zz) {
    if (resolved.transposed)
      throw Error("evolve: TZ input is not supported; convert to gzz or use a ZZ model");
    const auto back = resolved.perm.inverse();
    weights = WeightVector::create(back.apply(weights.kappa_sq()));
    psi0 = back.apply(psi0);
  }
  auto traj = evolve(resolved.gzz, StateVector(psi0), sample_times(opt.t0, opt.t1, opt.steps),
                     weights);
  if (resolved.zz) {
    for (auto& s : traj.states) s = StateVector(resolved.perm.apply(s.amplitudes()));
  }
  detail::emit(opt, out, io::write_trajectory_csv(traj));
  return kPass;
}

inline int cmd_bench(const Options& opt, std::ostream& out) {
  bench::BenchLimits limits;
  for (std::size_t d : opt.dims) {
    if (d == 0 || d % 2 != 0) throw ParseError("--dims: every dimension must be even and positive");
    if (d > limits.structured_max)
      throw ParseError("--dims: " + std::to_string(d) + " exceeds the structured cap 4096");
  }
  detail::emit(opt, out, bench::to_csv(bench::run(opt.dims, opt.repetitions, opt.ops, limits)));
  return kPass;
}

inline int cmd_convert(const Options& opt, std::ostream& out) {
  const auto model = detail::load_model(opt);
  if (opt.target == "gzz") {
    if (const auto* h = std::get_if<GzzHamiltonian>(&model)) {
      detail::emit(opt, out, io::write_model(*h));
    } else {
      const auto embedded = zz_to_gzz(embed_odd(std::get<ZigZagHamiltonian>(model)));
      detail::emit(opt, out, io::write_model(embedded.model));
    }
    return kPass;
  }
  if (opt.target == "zz") {
    if (opt.variant != "ZZ" && opt.variant != "TZ")
      throw ParseError("--variant must be ZZ or TZ");
    const auto variant = opt.variant == "ZZ" ? ZigZagVariant::ZZ : ZigZagVariant::TZ;
    if (const auto* z = std::get_if<ZigZagHamiltonian>(&model)) {
      detail::emit(opt, out,
                   io::write_model(ZigZagHamiltonian::create(variant, z->a(), z->c())));
    } else {
      detail::emit(opt, out, io::write_model(gzz_to_zz(std::get<GzzHamiltonian>(model), variant)));
    }
    return kPass;
  }
  throw ParseError("--to must be gzz or zz");
}

/// Parses argv and dispatches. Errors go to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized zig-zag Hamiltonians: closed-form algebra, eigensystems and metrics"};
  app.require_subcommand(1);
  Options opt;

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("model", opt.model_path, "Model file (gzz-model/v1 or zz-model/v1)")->required();
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", opt.out_path, "Output file"); };
  auto add_kappa = [&](CLI::App* sub) {
    sub->add_option("--kappa", opt.kappa, "Metric weights: uniform:VALUE or a JSON file");
  };

  auto* gen = app.add_subcommand("gen", "Generate a random model");
  gen->add_option("--dim", opt.dim, "Matrix dimension")->required();
  gen->add_option("--pattern", opt.pattern, "full | zigzag | banded:K");
  gen->add_option("--seed", opt.seed, "RNG seed");
  gen->add_option("--gap", opt.gap, "Minimum |lambda_+i - lambda_-j| over coupled pairs");
  gen->add_option("--range", opt.range, "Entry magnitude bound");
  gen->add_flag("--distinct", opt.distinct, "Keep all eigenvalues pairwise >= gap apart");
  gen->add_flag("--embed-odd", opt.embed_odd, "Allow odd --dim by padding a zero row/column");
  add_out(gen);

  auto* verify = app.add_subcommand("verify", "Check every invariant against the dense oracle");
  add_model(verify);
  add_kappa(verify);
  verify->add_option("--tol", opt.tol, "Bandwidth tolerance (relative to max |Theta|)");
  add_out(verify);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Print the eigenvalues");
  add_model(spectrum_cmd);
  add_out(spectrum_cmd);

  auto* metric = app.add_subcommand("metric", "Build the metric Theta as theta/v1 JSON");
  add_model(metric);
  add_kappa(metric);
  metric->add_option("--tol", opt.tol, "Bandwidth tolerance (relative to max |Theta|)");
  add_out(metric);

  auto* evolve_cmd = app.add_subcommand("evolve", "Time evolution as CSV");
  add_model(evolve_cmd);
  add_kappa(evolve_cmd);
  evolve_cmd->add_option("--t0", opt.t0, "Start time");
  evolve_cmd->add_option("--t1", opt.t1, "End time");
  evolve_cmd->add_option("--steps", opt.steps, "Number of intervals (steps + 1 samples)");
  evolve_cmd->add_option("--psi0", opt.psi0, "uniform | basis:K | JSON file of amplitudes");
  add_out(evolve_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "Structured vs dense timings as CSV");
  bench_cmd->add_option("--dims", opt.dims, "Even dimensions")->delimiter(',');
  bench_cmd->add_option("--ops", opt.ops, "inverse, eigensystem, mul")->delimiter(',');
  bench_cmd->add_option("--repetitions", opt.repetitions, "Timed repetitions per point");
  add_out(bench_cmd);

  auto* convert = app.add_subcommand("convert", "Convert between gzz-model and zz-model");
  add_model(convert);
  convert->add_option("--to", opt.target, "gzz | zz")->required();
  convert->add_option("--variant", opt.variant, "ZZ | TZ (for --to zz)");
  add_out(convert);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*gen) return cmd_gen(opt, out);
    if (*verify) return cmd_verify(opt, out);
    if (*spectrum_cmd) return cmd_spectrum(opt, out);
    if (*metric) return cmd_metric(opt, out);
    if (*evolve_cmd) return cmd_evolve(opt, out);
    if (*bench_cmd) return cmd_bench(opt, out);
    if (*convert) return cmd_convert(opt, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const GenerationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}

}  // namespace gzz::cli
