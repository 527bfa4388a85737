#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "paulidisc/matrix.hpp"

namespace paulidisc {

namespace detail {

/// Cyclic complex Jacobi sweeps. Eigenvalues only, no vector accumulation.
/// Converges quadratically for Hermitian input; the off-diagonal norm target
/// is 1e-14 relative to the matrix scale.
template <std::size_t N>
std::array<double, N> jacobi_hermitian_eigenvalues(ComplexMatrix<N> a) {
  // Symmetrize exactly so rounding in the caller cannot bias the iteration.
  for (std::size_t i = 0; i < N; ++i) {
    a(i, i) = cplx(a(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < N; ++j) {
      const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = m;
      a(j, i) = std::conj(m);
    }
  }

  const double scale = std::max(1.0, a.frobenius_norm());
  const double target = 1e-14 * scale;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) off += 2.0 * std::norm(a(i, j));
    if (std::sqrt(off) < target) break;
    if (sweep == 99) throw std::runtime_error("jacobi_hermitian_eigenvalues: no convergence");

    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double beta = std::abs(a(p, q));
        if (beta <= 1e-300) continue;
        const cplx phase = a(p, q) / beta;  // e^{i phi}
        const double alpha = a(p, p).real();
        const double delta = a(q, q).real();
        const double tau = (alpha - delta) / (2.0 * beta);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // A <- U^dagger A U with U_pp = c, U_pq = -s*phase, U_qp = s*conj(phase), U_qq = c.
        for (std::size_t r = 0; r < N; ++r) {
          const cplx arp = a(r, p);
          const cplx arq = a(r, q);
          a(r, p) = c * arp + s * std::conj(phase) * arq;
          a(r, q) = -s * phase * arp + c * arq;
        }
        for (std::size_t j = 0; j < N; ++j) {
          const cplx apj = a(p, j);
          const cplx aqj = a(q, j);
          a(p, j) = c * apj + s * phase * aqj;
          a(q, j) = -s * std::conj(phase) * apj + c * aqj;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cplx(a(p, p).real(), 0.0);
        a(q, q) = cplx(a(q, q).real(), 0.0);
      }
    }
  }

  std::array<double, N> ev;
  for (std::size_t i = 0; i < N; ++i) ev[i] = a(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace detail

/// Real eigenvalues of a Hermitian matrix, ascending. Dimension 2 is solved in
/// closed form; larger dimensions by cyclic Jacobi rotations.
template <std::size_t N>
std::array<double, N> eigenvalues_hermitian(const ComplexMatrix<N>& m) {
  if (m.hermiticity_defect() > 1e-12 * std::max(1.0, m.max_abs()))
    throw std::invalid_argument("eigenvalues_hermitian: matrix is not Hermitian");

  if constexpr (N == 2) {
    const double alpha = m(0, 0).real();
    const double delta = m(1, 1).real();
    const double mean = 0.5 * (alpha + delta);
    const double rad = std::hypot(0.5 * (alpha - delta), std::abs(m(0, 1)));
    return {mean - rad, mean + rad};
  } else {
    return detail::jacobi_hermitian_eigenvalues(m);
  }
}

/// Trace norm of a Hermitian matrix: the sum of absolute eigenvalues.
template <std::size_t N>
double trace_norm(const ComplexMatrix<N>& m) {
  const auto ev = eigenvalues_hermitian(m);
  double s = 0.0;
  for (double v : ev) s += std::abs(v);
  return s;
}

/// Hermitian within 1e-12, unit trace within 1e-12, eigenvalues >= -1e-10.
template <std::size_t N>
bool is_density_matrix(const ComplexMatrix<N>& m) {
  if (m.hermiticity_defect() > 1e-12) return false;
  if (std::abs(m.trace() - cplx(1.0)) > 1e-12) return false;
  const auto ev = eigenvalues_hermitian(m);
  return ev.front() >= -1e-10;
}

}  // namespace paulidisc
