#pragma once

// Seeded random GZZ models. Eigenvalues are drawn uniformly from the part of
// [-range, range] that keeps every coupled pair at least `gap` apart and every
// eigenvalue at least gap/2 away from zero.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gzz/algebra.hpp"
#include "gzz/errors.hpp"
#include "gzz/model.hpp"

namespace gzz {

enum class PatternKind { full, zigzag, banded };

struct PatternSpec {
  PatternKind kind = PatternKind::full;
  int width = 0;  // banded only: |i - j| <= width

  /// Parses "full", "zigzag", "banded:K" or "banded(K)".
  static PatternSpec parse(const std::string& text) {
    if (text == "full") return {PatternKind::full, 0};
    if (text == "zigzag") return {PatternKind::zigzag, 0};
    if (text.rfind("banded", 0) == 0 && text.size() > 7) {
      std::string digits = text.substr(7);
      if (!digits.empty() && digits.back() == ')') digits.pop_back();
      try {
        std::size_t used = 0;
        int k = std::stoi(digits, &used);
        if (used == digits.size() && k >= 0) return {PatternKind::banded, k};
      } catch (const std::exception&) {
      }
    }
    throw ParseError("unknown pattern '" + text + "' (expected full, zigzag or banded:K)");
  }

  bool contains(int i, int j) const {
    switch (kind) {
      case PatternKind::full: return true;
      case PatternKind::zigzag: return j == i || j == i + 1;
      case PatternKind::banded: return std::abs(i - j) <= width;
    }
    return false;
  }
};

struct GeneratorConfig {
  int dim = 4;
  PatternSpec pattern{};
  std::uint64_t seed = 0;
  double gap = 0.1;
  double range = 1.0;
  /// Keep all eigenvalues pairwise >= gap apart, not only coupled pairs.
  bool distinct = false;
  /// Allow odd dim: build labels +1..+m, -1..-(m-1) and pad -m with zero.
  bool embed_odd = false;
};

/// Uniform doubles from mt19937_64 with a fixed bit recipe, so output depends
/// only on the seed and not on the standard library's distributions.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  bool coin() { return (engine_() >> 63) != 0; }

private:
  std::mt19937_64 engine_;
};

namespace detail {

/// Uniform sample from [lo, hi] minus the union of open intervals.
inline double sample_excluding(Rng& rng, double lo, double hi,
                               std::vector<std::pair<double, double>> excluded) {
  std::sort(excluded.begin(), excluded.end());
  std::vector<std::pair<double, double>> allowed;
  double cursor = lo;
  for (auto [a, b] : excluded) {
    if (b <= cursor) continue;
    if (a > cursor) allowed.emplace_back(cursor, std::min(a, hi));
    cursor = std::max(cursor, b);
    if (cursor >= hi) break;
  }
  if (cursor < hi) allowed.emplace_back(cursor, hi);
  double total = 0.0;
  for (auto [a, b] : allowed) total += std::max(0.0, b - a);
  if (!(total > 0.0)) {
    throw GenerationError("impossible constraints: no room left in [-range, range] for the "
                          "requested gap; increase --range or decrease --gap");
  }
  double u = rng.uniform01() * total;
  for (auto [a, b] : allowed) {
    const double len = std::max(0.0, b - a);
    if (u < len) return a + u;
    u -= len;
  }
  return allowed.back().second;
}

}  // namespace detail

inline GzzHamiltonian generate(const GeneratorConfig& config) {
  if (config.dim < 1) throw GenerationError("impossible constraints: dim must be positive");
  if (config.dim % 2 != 0 && !config.embed_odd) {
    throw GenerationError("impossible constraints: dim " + std::to_string(config.dim) +
                          " is odd (pass --embed-odd to pad it)");
  }
  if (!(config.gap > 0.0)) throw GenerationError("impossible constraints: gap must be positive");
  if (!(config.range >= config.gap))
    throw GenerationError("impossible constraints: range must be at least gap");
  if (config.pattern.kind == PatternKind::banded && config.pattern.width < 0)
    throw GenerationError("impossible constraints: banded width must be non-negative");

  Rng rng(config.seed);
  const bool odd = config.dim % 2 != 0;
  const int m = (config.dim + 1) / 2;
  const int minus_count = odd ? m - 1 : m;
  const double lo = -config.range, hi = config.range, gap = config.gap;

  std::vector<std::pair<double, double>> placed;  // exclusion zones for `distinct`
  const std::pair<double, double> near_zero{-gap / 2, gap / 2};

  std::vector<double> lm(minus_count);
  for (int j = 0; j < minus_count; ++j) {
    std::vector<std::pair<double, double>> excluded{near_zero};
    if (config.distinct) excluded.insert(excluded.end(), placed.begin(), placed.end());
    lm[j] = detail::sample_excluding(rng, lo, hi, std::move(excluded));
    placed.emplace_back(lm[j] - gap, lm[j] + gap);
  }

  std::vector<double> lp(m);
  std::vector<Coupling> couplings;
  for (int i = 1; i <= m; ++i) {
    std::vector<std::pair<double, double>> excluded{near_zero};
    if (config.distinct) excluded.insert(excluded.end(), placed.begin(), placed.end());
    for (int j = 1; j <= minus_count; ++j)
      if (config.pattern.contains(i, j)) excluded.emplace_back(lm[j - 1] - gap, lm[j - 1] + gap);
    lp[i - 1] = detail::sample_excluding(rng, lo, hi, std::move(excluded));
    placed.emplace_back(lp[i - 1] - gap, lp[i - 1] + gap);
  }

  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= minus_count; ++j) {
      if (!config.pattern.contains(i, j)) continue;
      const double magnitude = rng.uniform(gap, config.range);
      couplings.push_back({i, j, rng.coin() ? magnitude : -magnitude});
    }
  }

  if (odd) return embed_odd(std::move(lp), std::move(lm), std::move(couplings));
  return GzzHamiltonian::from_sorted(std::move(lp), std::move(lm), std::move(couplings));
}

/// Random strictly positive weights in [lo, hi].
inline WeightVector random_weights(Rng& rng, std::size_t dim, double lo = 0.5, double hi = 2.0) {
  std::vector<double> w(dim);
  for (auto& x : w) x = rng.uniform(lo, hi);
  return WeightVector::create(std::move(w));
}

}  // namespace gzz
