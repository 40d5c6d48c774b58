#pragma once

// Time evolution i d/dt psi = H psi (hbar = 1) through the closed-form
// eigensystem: U(t) = Q exp(-i Lambda t) Q^-1.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "gzz/dense.hpp"
#include "gzz/errors.hpp"
#include "gzz/metric.hpp"
#include "gzz/model.hpp"
#include "gzz/spectral.hpp"

namespace gzz {

using complex = std::complex<double>;

class StateVector {
public:
  StateVector() = default;
  explicit StateVector(std::vector<complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    for (const auto& x : amplitudes_)
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
        throw ModelError("state vector has a non-finite amplitude");
  }

  static StateVector basis(std::size_t dim, std::size_t position) {
    std::vector<complex> v(dim);
    v.at(position) = 1.0;
    return StateVector(std::move(v));
  }

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  const std::vector<complex>& amplitudes() const noexcept { return amplitudes_; }
  const complex& operator[](std::size_t k) const { return amplitudes_[k]; }

private:
  std::vector<complex> amplitudes_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> theta_norms;  // psi^dagger Theta psi
  std::vector<double> l2_norms;     // psi^dagger psi
};

/// U(t) = D + Nbar D - D Nbar with D = exp(-i Lambda t). The Nbar D Nbar term
/// vanishes because Nbar has no nonzero -j rows.
inline ComplexMatrix propagator(const GzzHamiltonian& h, double t) {
  const auto q = eigen_Q(h);
  const auto diag = h.diagonal();
  const std::size_t n = h.dim();
  std::vector<complex> phase(n);
  for (std::size_t k = 0; k < n; ++k) phase[k] = std::exp(complex(0.0, -diag[k] * t));
  ComplexMatrix u(n, n);
  for (std::size_t k = 0; k < n; ++k) u(k, k) = phase[k];
  for (const auto& e : q.entries()) {
    const std::size_t r = plus_offset(e.i), c = minus_offset(e.j);
    u(r, c) = e.value * (phase[c] - phase[r]);
  }
  return u;
}

/// psi^dagger Theta psi for real symmetric Theta, evaluated in real arithmetic.
inline double theta_norm(const std::vector<complex>& psi, const DenseMatrix& theta) {
  if (!theta.square() || theta.rows() != psi.size())
    throw DimensionMismatch("theta_norm: state and metric sizes differ");
  double sum = 0.0;
  for (std::size_t r = 0; r < psi.size(); ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < psi.size(); ++c)
      row += theta(r, c) * (psi[r].real() * psi[c].real() + psi[r].imag() * psi[c].imag());
    sum += row;
  }
  return sum;
}

inline double theta_norm(const StateVector& psi, const DenseMatrix& theta) {
  return theta_norm(psi.amplitudes(), theta);
}

/// psi^dagger psi, the Theta = I counterpart of theta_norm.
inline double l2_norm_sq(const std::vector<complex>& psi) {
  double sum = 0.0;
  for (const auto& x : psi) sum += std::norm(x);
  return sum;
}

/// psi(t) = Q exp(-i Lambda t) Q^-1 psi0, applied with the sparse factors.
inline std::vector<complex> evolve_state(const GzzHamiltonian& h, const EigenFactor& q,
                                         const std::vector<complex>& psi0, double t) {
  const auto diag = h.diagonal();
  auto coeffs = factor_inverse(q).apply(psi0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] *= std::exp(complex(0.0, -diag[k] * t));
  return q.apply(coeffs);
}

inline Trajectory evolve(const GzzHamiltonian& h, const StateVector& psi0,
                         const std::vector<double>& times, const WeightVector& w) {
  if (psi0.dim() != h.dim())
    throw DimensionMismatch("evolve: initial state has dimension " + std::to_string(psi0.dim()) +
                            ", model has " + std::to_string(h.dim()));
  const auto metric = build_theta(h, w);
  const auto q = eigen_Q(h);
  Trajectory out;
  out.times = times;
  out.states.reserve(times.size());
  for (double t : times) {
    auto psi = evolve_state(h, q, psi0.amplitudes(), t);
    out.theta_norms.push_back(theta_norm(psi, metric.theta()));
    out.l2_norms.push_back(l2_norm_sq(psi));
    out.states.emplace_back(std::move(psi));
  }
  return out;
}

/// Evenly spaced sample times t0, ..., t1 (steps intervals, steps + 1 points).
inline std::vector<double> sample_times(double t0, double t1, std::size_t steps) {
  std::vector<double> out;
  if (steps == 0) return {t0};
  out.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k)
    out.push_back(t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(steps));
  return out;
}

}  // namespace gzz
