#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "paulidisc/linalg.hpp"
#include "paulidisc/pauli_dynamics.hpp"

namespace paulidisc {

/// Prior probabilities of the two hypotheses.
struct Priors {
  double q1;
  double q2;

  Priors(double a, double b) : q1(a), q2(b) {
    if (!(q1 >= 0.0) || !(q2 >= 0.0) || std::abs(q1 + q2 - 1.0) > 1e-12)
      throw std::invalid_argument("Priors: need q1, q2 >= 0 with q1 + q2 = 1");
  }

  static Priors equal() { return {0.5, 0.5}; }
  static Priors from_q1(double a) { return {a, 1.0 - a}; }
};

/// Weighted difference r_k = q1 p_k^(1) - q2 p_k^(2); every error probability
/// of the discrimination problem is a function of this vector alone.
struct RVector {
  std::array<double, 4> r;
  double sum() const { return r[0] + r[1] + r[2] + r[3]; }
};

inline RVector r_vector(const Priors& priors, const PauliProbVector& p1,
                        const PauliProbVector& p2) {
  RVector out{};
  for (std::size_t k = 0; k < 4; ++k) out.r[k] = priors.q1 * p1.p[k] - priors.q2 * p2.p[k];
  return out;
}

/// Optimal probe axis for the entanglement-free strategy.
enum class Axis { z, x, y };

inline const char* to_string(Axis a) {
  switch (a) {
    case Axis::z: return "z";
    case Axis::x: return "x";
    default: return "y";
  }
}

struct SeparableError {
  double p;
  Axis axis;
};

/// Minimum error probability over single-qubit inputs:
/// (1 - M)/2 with M the best of the three Pauli eigenbasis probes.
/// Ties are broken in the order z, x, y.
inline SeparableError error_prob_no_ent(const RVector& rv) {
  const auto& r = rv.r;
  const double mz = std::abs(r[0] + r[3]) + std::abs(r[1] + r[2]);
  const double mx = std::abs(r[0] + r[1]) + std::abs(r[2] + r[3]);
  const double my = std::abs(r[0] + r[2]) + std::abs(r[1] + r[3]);
  double m = mz;
  Axis axis = Axis::z;
  if (mx > m) {
    m = mx;
    axis = Axis::x;
  }
  if (my > m) {
    m = my;
    axis = Axis::y;
  }
  return {0.5 * (1.0 - m), axis};
}

/// Minimum error probability with a maximally entangled probe:
/// (1 - sum_k |r_k|)/2.
inline double error_prob_ent(const RVector& rv) {
  double s = 0.0;
  for (double v : rv.r) s += std::abs(v);
  return 0.5 * (1.0 - s);
}

/// Entanglement strictly lowers the error iff the product of the four
/// components is strictly negative.
inline bool entanglement_advantage(const RVector& rv) {
  return rv.r[0] * rv.r[1] * rv.r[2] * rv.r[3] < 0.0;
}

struct DiscriminationReport {
  double p_no_ent;
  double p_ent;
  bool advantage;
  Axis optimal_axis;
};

inline DiscriminationReport discrimination_report(const Priors& priors, const PauliProbVector& p1,
                                                  const PauliProbVector& p2) {
  const RVector r = r_vector(priors, p1, p2);
  const SeparableError sep = error_prob_no_ent(r);
  return {sep.p, error_prob_ent(r), entanglement_advantage(r), sep.axis};
}

/// Helstrom bound for two states: (1 - ||q1 rho1 - q2 rho2||_1)/2.
template <std::size_t N>
double helstrom(double q1, const ComplexMatrix<N>& rho1, double q2,
                const ComplexMatrix<N>& rho2) {
  return 0.5 * (1.0 - trace_norm(q1 * rho1 - q2 * rho2));
}

/// Deterministic near-uniform unit vectors on the sphere (Fibonacci lattice).
inline std::vector<std::array<double, 3>> fibonacci_sphere(std::size_t n) {
  if (n < 2) throw std::invalid_argument("fibonacci_sphere: need at least two points");
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<std::array<double, 3>> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = 1.0 - 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    const double radius = std::sqrt(std::max(0.0, 1.0 - y * y));
    const double theta = golden * static_cast<double>(i);
    pts[i] = {std::cos(theta) * radius, y, std::sin(theta) * radius};
  }
  return pts;
}

/// Direct search over pure qubit probes on a Fibonacci grid. Upper bound on
/// the true minimum error, converging from above as n_grid grows (O(1/n_grid)).
/// Structurally independent of the closed forms it validates: probes are
/// explicit density matrices pushed through the channels into the Helstrom
/// bound.
inline double brute_force_no_ent(const PauliProbVector& p1, const PauliProbVector& p2,
                                 const Priors& priors, std::size_t n_grid) {
  if (n_grid < 16) throw std::invalid_argument("brute_force_no_ent: n_grid must be >= 16");
  double best = 1.0;
  for (const auto& n : fibonacci_sphere(n_grid)) {
    const Mat2 rho = bloch_state(n[0], n[1], n[2]);
    const double p = helstrom(priors.q1, apply_channel(p1, rho), priors.q2, apply_channel(p2, rho));
    best = std::min(best, p);
  }
  return best;
}

namespace detail {

inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// One standard normal via Box-Muller; deterministic for a given engine state.
inline double gaussian(std::mt19937_64& g) {
  double u1 = uniform01(g);
  while (u1 <= 0.0) u1 = uniform01(g);
  const double u2 = uniform01(g);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace detail

/// Haar-like random two-qubit pure state (normalized complex Gaussian ket).
inline Mat4 random_two_qubit_pure(std::mt19937_64& g) {
  std::array<cplx, 4> ket;
  for (auto& v : ket) v = cplx(detail::gaussian(g), detail::gaussian(g));
  return outer(ket);
}

struct EntBruteForceResult {
  double min_error;        // best error found over all probed inputs
  double bell_error;       // Helstrom value for the canonical Bell input
  double min_sample_error; // best error over the random inputs alone
  double closed_form;      // (1 - sum |r_k|)/2 for comparison
  bool bell_matches_closed_form;  // within 1e-12
};

/// Entanglement-assisted search: the canonical Bell input plus n_samples
/// random two-qubit pure inputs (deterministic for a given seed). The Bell
/// input attains the closed form exactly; no sample can beat it.
inline EntBruteForceResult brute_force_ent(const PauliProbVector& p1, const PauliProbVector& p2,
                                           const Priors& priors, std::size_t n_samples,
                                           std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("brute_force_ent: n_samples must be >= 1");
  const auto probe = [&](const Mat4& rho) {
    return helstrom(priors.q1, apply_channel_extended(p1, rho), priors.q2,
                    apply_channel_extended(p2, rho));
  };

  EntBruteForceResult res{};
  res.closed_form = error_prob_ent(r_vector(priors, p1, p2));
  res.bell_error = probe(bell_phi_plus());
  res.bell_matches_closed_form = std::abs(res.bell_error - res.closed_form) <= 1e-12;

  std::mt19937_64 g(seed);
  double best_sample = 1.0;
  for (std::size_t i = 0; i < n_samples; ++i)
    best_sample = std::min(best_sample, probe(random_two_qubit_pure(g)));
  res.min_sample_error = best_sample;
  res.min_error = std::min(res.bell_error, best_sample);
  return res;
}

}  // namespace paulidisc
