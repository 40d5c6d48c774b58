#pragma once

// File formats: gzz-model/v1 and zz-model/v1 JSON, theta/v1 JSON, weight
// files, and the evolution CSV. Every double is written with 17 significant
// digits so that reading a file back reproduces the bits.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gzz/dense.hpp"
#include "gzz/dynamics.hpp"
#include "gzz/errors.hpp"
#include "gzz/model.hpp"

namespace gzz::io {

using Model = std::variant<GzzHamiltonian, ZigZagHamiltonian>;

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::string number_list(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? "," : "") + format_double(xs[k]);
  return out + "]";
}

using json = nlohmann::json;

inline const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
  return *it;
}

inline std::vector<double> number_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError("field '" + where + "' must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number())
      throw ParseError("field '" + where + "[" + std::to_string(k) + "]' is not a number");
    out.push_back(j[k].get<double>());
  }
  return out;
}

inline int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError("field '" + where + "' must be an integer");
  return j.get<int>();
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line/column.
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') ++line, col = 1;
      else ++col;
    }
    throw ParseError("JSON syntax error at line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + e.what());
  }
}

}  // namespace detail

inline std::string write_model(const GzzHamiltonian& h) {
  std::string out = "{\"format\":\"gzz-model/v1\",\"m\":" + std::to_string(h.m()) +
                    ",\"lambda_plus\":" + detail::number_list(h.lambda_plus()) +
                    ",\"lambda_minus\":" + detail::number_list(h.lambda_minus()) +
                    ",\"couplings\":[";
  for (std::size_t k = 0; k < h.couplings().size(); ++k) {
    const auto& c = h.couplings()[k];
    out += std::string(k ? "," : "") + "{\"i\":" + std::to_string(c.i) + ",\"j\":" +
           std::to_string(c.j) + ",\"value\":" + format_double(c.value) + "}";
  }
  return out + "]}\n";
}

inline std::string write_model(const ZigZagHamiltonian& z) {
  return "{\"format\":\"zz-model/v1\",\"variant\":\"" + to_string(z.variant()) +
         "\",\"a\":" + detail::number_list(z.a()) + ",\"c\":" + detail::number_list(z.c()) +
         "}\n";
}

inline std::string write_model(const Model& model) {
  return std::visit([](const auto& m) { return write_model(m); }, model);
}

inline Model read_model(const std::string& text) {
  const auto j = detail::parse_json(text);
  const auto& format = detail::field(j, "format");
  if (!format.is_string()) throw ParseError("field 'format' must be a string");
  const auto name = format.get<std::string>();
  try {
    if (name == "gzz-model/v1") {
      const int m = detail::integer(detail::field(j, "m"), "m");
      auto lp = detail::number_array(detail::field(j, "lambda_plus"), "lambda_plus");
      auto lm = detail::number_array(detail::field(j, "lambda_minus"), "lambda_minus");
      if (m < 0 || lp.size() != static_cast<std::size_t>(m) ||
          lm.size() != static_cast<std::size_t>(m)) {
        throw ParseError("field 'm' = " + std::to_string(m) +
                         " does not match lambda_plus/lambda_minus lengths");
      }
      const auto& list = detail::field(j, "couplings");
      if (!list.is_array()) throw ParseError("field 'couplings' must be an array");
      std::vector<Coupling> couplings;
      for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string where = "couplings[" + std::to_string(k) + "]";
        const auto& entry = list[k];
        if (!entry.is_object()) throw ParseError("field '" + where + "' must be an object");
        const int i = detail::integer(detail::field(entry, "i"), where + ".i");
        const int jj = detail::integer(detail::field(entry, "j"), where + ".j");
        const auto& v = detail::field(entry, "value");
        if (!v.is_number()) throw ParseError("field '" + where + ".value' is not a number");
        couplings.push_back({i, jj, v.get<double>()});
      }
      return GzzHamiltonian::create(std::move(lp), std::move(lm), std::move(couplings));
    }
    if (name == "zz-model/v1") {
      const auto& variant = detail::field(j, "variant");
      if (!variant.is_string() || (variant != "ZZ" && variant != "TZ"))
        throw ParseError("field 'variant' must be \"ZZ\" or \"TZ\"");
      auto a = detail::number_array(detail::field(j, "a"), "a");
      auto c = detail::number_array(detail::field(j, "c"), "c");
      return ZigZagHamiltonian::create(variant == "ZZ" ? ZigZagVariant::ZZ : ZigZagVariant::TZ,
                                       std::move(a), std::move(c));
    }
  } catch (const ModelError& e) {
    throw ParseError(std::string("invalid model: ") + e.what());
  }
  throw ParseError("unknown format '" + name + "' (expected gzz-model/v1 or zz-model/v1)");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

/// Weight files: a JSON array of kappa^2 values or {"kappa_sq": [...]}.
inline std::vector<double> read_weights(const std::string& text) {
  const auto j = detail::parse_json(text);
  if (j.is_array()) return detail::number_array(j, "kappa_sq");
  return detail::number_array(detail::field(j, "kappa_sq"), "kappa_sq");
}

struct ThetaReport {
  DenseMatrix theta;
  double residual = 0.0;
  bool positive = false;
  std::size_t bandwidth = 0;
};

inline std::string write_theta(const ThetaReport& r) {
  std::string out = "{\"format\":\"theta/v1\",\"dim\":" + std::to_string(r.theta.rows()) +
                    ",\"entries\":[";
  for (std::size_t row = 0; row < r.theta.rows(); ++row) {
    const auto span = r.theta.row(row);
    out += (row ? "," : "") + detail::number_list({span.begin(), span.end()});
  }
  out += "],\"residual\":" + format_double(r.residual) +
         ",\"positive\":" + (r.positive ? "true" : "false") +
         ",\"bandwidth\":" + std::to_string(r.bandwidth) + "}\n";
  return out;
}

inline ThetaReport read_theta(const std::string& text) {
  const auto j = detail::parse_json(text);
  if (detail::field(j, "format") != "theta/v1") throw ParseError("expected format theta/v1");
  const int dim = detail::integer(detail::field(j, "dim"), "dim");
  const auto& rows = detail::field(j, "entries");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(dim))
    throw ParseError("field 'entries' must hold dim rows");
  ThetaReport r;
  r.theta = DenseMatrix(dim, dim);
  for (int k = 0; k < dim; ++k) {
    auto row = detail::number_array(rows[k], "entries[" + std::to_string(k) + "]");
    if (row.size() != static_cast<std::size_t>(dim)) throw ParseError("ragged 'entries' row");
    for (int c = 0; c < dim; ++c) r.theta(k, c) = row[c];
  }
  r.residual = detail::field(j, "residual").get<double>();
  r.positive = detail::field(j, "positive").get<bool>();
  r.bandwidth = detail::field(j, "bandwidth").get<std::size_t>();
  return r;
}

/// t,theta_norm,l2_norm,re_psi_1,im_psi_1,...
inline std::string write_trajectory_csv(const Trajectory& traj) {
  const std::size_t dim = traj.states.empty() ? 0 : traj.states.front().dim();
  std::string out = "t,theta_norm,l2_norm";
  for (std::size_t k = 1; k <= dim; ++k)
    out += ",re_psi_" + std::to_string(k) + ",im_psi_" + std::to_string(k);
  out += "\n";
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    out += format_double(traj.times[s]) + "," + format_double(traj.theta_norms[s]) + "," +
           format_double(traj.l2_norms[s]);
    for (const auto& x : traj.states[s].amplitudes())
      out += "," + format_double(x.real()) + "," + format_double(x.imag());
    out += "\n";
  }
  return out;
}

}  // namespace gzz::io
