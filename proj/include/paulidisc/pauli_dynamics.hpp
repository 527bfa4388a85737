#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "paulidisc/matrix.hpp"

namespace paulidisc {

/// Nonnegative decay rates (gamma_x, gamma_y, gamma_z) of a purely dissipative
/// Pauli semigroup. The vector fully specifies one dynamical process.
struct DecayRates {
  std::array<double, 3> gamma;

  DecayRates(double gx, double gy, double gz) : gamma{gx, gy, gz} {
    for (double g : gamma)
      if (!(g >= 0.0) || !std::isfinite(g))
        throw std::invalid_argument("DecayRates: rates must be finite and nonnegative");
  }

  double operator[](std::size_t k) const { return gamma[k]; }

  /// Decay constants of the four Pauli-basis eigenvalues:
  /// {0, 2(gy+gz), 2(gx+gz), 2(gx+gy)}.
  std::array<double, 4> exponent_rate_sums() const {
    return {0.0, 2.0 * (gamma[1] + gamma[2]), 2.0 * (gamma[0] + gamma[2]),
            2.0 * (gamma[0] + gamma[1])};
  }

  bool operator==(const DecayRates& o) const { return gamma == o.gamma; }
};

/// Pauli-basis channel eigenvalues (1, a1, a2, a3); each in (0,1] for t >= 0.
struct ExponentVector {
  std::array<double, 4> a;
};

/// Probability weights (p0, p1, p2, p3) over {I, sigma_x, sigma_y, sigma_z}.
struct PauliProbVector {
  std::array<double, 4> p;

  double sum() const { return p[0] + p[1] + p[2] + p[3]; }
  bool is_valid(double tol = 1e-12) const {
    if (std::abs(sum() - 1.0) > tol) return false;
    for (double v : p)
      if (v < -tol) return false;
    return true;
  }
};

/// The 4x4 Hadamard matrix linking channel eigenvalues to Pauli weights.
inline std::array<std::array<int, 4>, 4> hadamard4() {
  return {{{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}}};
}

inline ExponentVector exponent_vector(const DecayRates& rates, double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument("exponent_vector: time must be finite and nonnegative");
  const auto s = rates.exponent_rate_sums();
  return {{1.0, std::exp(-s[1] * t), std::exp(-s[2] * t), std::exp(-s[3] * t)}};
}

/// Pauli weights of the channel generated by `rates` after evolution time t:
/// p_k = (1/4) sum_l H_kl a_l(t).
inline PauliProbVector channel_probabilities(const DecayRates& rates, double t) {
  const auto a = exponent_vector(rates, t).a;
  return {{0.25 * (a[0] + a[1] + a[2] + a[3]), 0.25 * (a[0] + a[1] - a[2] - a[3]),
           0.25 * (a[0] - a[1] + a[2] - a[3]), 0.25 * (a[0] - a[1] - a[2] + a[3])}};
}

/// Exact t -> infinity limit, decided structurally: an eigenvalue survives iff
/// its exponent rate sum is exactly zero. Rates are user inputs, so the zero
/// test is exact rather than a large-t evaluation.
inline PauliProbVector stationary_probabilities(const DecayRates& rates) {
  const auto s = rates.exponent_rate_sums();
  std::array<double, 4> a;
  for (std::size_t l = 0; l < 4; ++l) a[l] = (s[l] == 0.0) ? 1.0 : 0.0;
  return {{0.25 * (a[0] + a[1] + a[2] + a[3]), 0.25 * (a[0] + a[1] - a[2] - a[3]),
           0.25 * (a[0] - a[1] + a[2] - a[3]), 0.25 * (a[0] - a[1] - a[2] + a[3])}};
}

/// Pauli matrices, indexed 0..3 as {I, sigma_x, sigma_y, sigma_z}.
inline const Mat2& pauli(std::size_t k) {
  static const std::array<Mat2, 4> s = [] {
    std::array<Mat2, 4> m{};
    m[0] = Mat2::identity();
    m[1](0, 1) = 1.0;
    m[1](1, 0) = 1.0;
    m[2](0, 1) = cplx(0.0, -1.0);
    m[2](1, 0) = cplx(0.0, 1.0);
    m[3](0, 0) = 1.0;
    m[3](1, 1) = -1.0;
    return m;
  }();
  if (k > 3) throw std::invalid_argument("pauli: index out of range");
  return s[k];
}

/// Pure qubit state (I + n . sigma)/2 from a unit Bloch vector.
inline Mat2 bloch_state(double nx, double ny, double nz) {
  Mat2 rho = Mat2::identity();
  rho *= 0.5;
  rho += 0.5 * nx * pauli(1);
  rho += 0.5 * ny * pauli(2);
  rho += 0.5 * nz * pauli(3);
  return rho;
}

/// The canonical maximally entangled two-qubit state (|00> + |11>)/sqrt(2).
inline Mat4 bell_phi_plus() {
  Mat4 m;
  m(0, 0) = 0.5;
  m(0, 3) = 0.5;
  m(3, 0) = 0.5;
  m(3, 3) = 0.5;
  return m;
}

/// rho -> sum_k p_k sigma_k rho sigma_k.
inline Mat2 apply_channel(const PauliProbVector& p, const Mat2& rho) {
  Mat2 out;
  for (std::size_t k = 0; k < 4; ++k) {
    if (p.p[k] == 0.0) continue;
    out += p.p[k] * (pauli(k) * rho * pauli(k));
  }
  return out;
}

/// Channel on the first qubit only: rho -> sum_k p_k (sigma_k x I) rho (sigma_k x I).
inline Mat4 apply_channel_extended(const PauliProbVector& p, const Mat4& rho) {
  static const std::array<Mat4, 4> kraus = [] {
    std::array<Mat4, 4> m{};
    for (std::size_t k = 0; k < 4; ++k) m[k] = kron(pauli(k), Mat2::identity());
    return m;
  }();
  Mat4 out;
  for (std::size_t k = 0; k < 4; ++k) {
    if (p.p[k] == 0.0) continue;
    out += p.p[k] * (kraus[k] * rho * kraus[k]);
  }
  return out;
}

}  // namespace paulidisc
