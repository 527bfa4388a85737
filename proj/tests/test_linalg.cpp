#include <catch2/catch.hpp>

#include <cmath>
#include <random>

#include "paulidisc/linalg.hpp"
#include "paulidisc/pauli_dynamics.hpp"
#include "test_support.hpp"

using namespace paulidisc;
using test_support::determinant;
using test_support::random_hermitian;
using test_support::random_unitary;

TEST_CASE("eigenvalues of fixed 2x2 matrices") {
  const auto id = eigenvalues_hermitian(Mat2::identity());
  CHECK(id[0] == Approx(1.0).margin(1e-14));
  CHECK(id[1] == Approx(1.0).margin(1e-14));

  const auto z = eigenvalues_hermitian(pauli(3));
  CHECK(z[0] == Approx(-1.0).margin(1e-14));
  CHECK(z[1] == Approx(1.0).margin(1e-14));
}

TEST_CASE("eigenvalues of a diagonal 4x4 matrix") {
  Mat4 m;
  m(0, 0) = 0.1;
  m(1, 1) = 0.2;
  m(2, 2) = 0.3;
  m(3, 3) = 0.4;
  const auto ev = eigenvalues_hermitian(m);
  CHECK(ev[0] == Approx(0.1).margin(1e-14));
  CHECK(ev[1] == Approx(0.2).margin(1e-14));
  CHECK(ev[2] == Approx(0.3).margin(1e-14));
  CHECK(ev[3] == Approx(0.4).margin(1e-14));
}

TEST_CASE("eigenvalues solve the characteristic equation") {
  std::mt19937_64 g(41);
  for (int rep = 0; rep < 200; ++rep) {
    const Mat4 m = random_hermitian<4>(g);
    const auto ev = eigenvalues_hermitian(m);
    double trace = 0.0, sq = 0.0;
    for (double v : ev) {
      trace += v;
      sq += v * v;
    }
    CHECK(trace == Approx(m.trace().real()).margin(1e-12));
    CHECK(sq == Approx(m.frobenius_norm() * m.frobenius_norm()).margin(1e-11));
    for (double v : ev) {
      Mat4 shifted = m;
      for (std::size_t i = 0; i < 4; ++i) shifted(i, i) -= v;
      // det(m - lambda I) vanishes relative to the matrix scale (~norm^4).
      const double scale = std::pow(std::max(1.0, m.frobenius_norm()), 4);
      CHECK(std::abs(determinant(shifted)) <= 1e-12 * scale);
    }
    CHECK(std::is_sorted(ev.begin(), ev.end()));
  }
}

TEST_CASE("non-Hermitian input is rejected") {
  Mat2 m = Mat2::identity();
  m(0, 1) = 1e-6;
  CHECK_THROWS_AS(eigenvalues_hermitian(m), std::invalid_argument);
  Mat4 m4;
  m4(1, 2) = cplx(0.0, 1e-3);
  CHECK_THROWS_AS(trace_norm(m4), std::invalid_argument);
}

TEST_CASE("trace norm of fixed matrices") {
  CHECK(trace_norm(pauli(3)) == Approx(2.0).margin(1e-14));
  CHECK(trace_norm(Mat2{}) == 0.0);
  CHECK(trace_norm(Mat4{}) == 0.0);
}

TEST_CASE("trace norm of a Bell-diagonal difference is the weight l1 norm") {
  // sum_k r_k (sigma_k x I)|Phi+><Phi+|(sigma_k x I) has eigenvalues r_k.
  std::mt19937_64 g(42);
  for (int rep = 0; rep < 50; ++rep) {
    std::array<double, 4> r;
    double l1 = 0.0;
    for (double& v : r) {
      v = test_support::uniform(g, -0.5, 0.5);
      l1 += std::abs(v);
    }
    Mat4 m;
    for (std::size_t k = 0; k < 4; ++k) {
      const Mat4 kk = kron(pauli(k), Mat2::identity());
      m += r[k] * (kk * bell_phi_plus() * kk);
    }
    CHECK(trace_norm(m) == Approx(l1).margin(1e-12));
  }
}

TEST_CASE("trace norm properties on random Hermitian matrices") {
  std::mt19937_64 g(43);
  for (int rep = 0; rep < 100; ++rep) {
    const Mat4 m = random_hermitian<4>(g);
    const Mat4 u = random_unitary<4>(g);
    const Mat4 rotated = u * m * u.adjoint();
    CHECK(trace_norm(rotated) == Approx(trace_norm(m)).margin(1e-10));

    const double a = test_support::uniform(g, -3.0, 3.0);
    CHECK(trace_norm(cplx(a) * m) == Approx(std::abs(a) * trace_norm(m)).margin(1e-12));

    const Mat4 b = random_hermitian<4>(g);
    CHECK(trace_norm(m + b) <= trace_norm(m) + trace_norm(b) + 1e-10);
  }
}

TEST_CASE("density matrix predicate") {
  CHECK(is_density_matrix(bloch_state(0, 0, 1)));
  CHECK(is_density_matrix(bell_phi_plus()));
  Mat2 half = Mat2::identity();
  half *= 0.5;
  CHECK(is_density_matrix(half));
  CHECK_FALSE(is_density_matrix(pauli(3)));         // trace zero
  CHECK_FALSE(is_density_matrix(2.0 * bloch_state(0, 0, 1)));  // trace two
}
