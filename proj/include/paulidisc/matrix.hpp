#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace paulidisc {

using cplx = std::complex<double>;

/// Dense complex square matrix of small fixed dimension, value semantics.
/// Only the operations needed for qubit/two-qubit channel algebra are provided.
template <std::size_t N>
class ComplexMatrix {
 public:
  static constexpr std::size_t dim = N;

  ComplexMatrix() : e_{} {}

  cplx& operator()(std::size_t i, std::size_t j) { return e_[i * N + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return e_[i * N + j]; }

  static ComplexMatrix identity() {
    ComplexMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const cplx& v : e_) s += std::norm(v);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& v : e_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Largest |a_ij - conj(a_ji)| over all entries; zero for exactly Hermitian input.
  double hermiticity_defect() const {
    double d = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i; j < N; ++j)
        d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
  }

  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) e_[k] += o.e_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) e_[k] -= o.e_[k];
    return *this;
  }
  ComplexMatrix& operator*=(cplx a) {
    for (cplx& v : e_) v *= a;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(cplx a, ComplexMatrix m) { return m *= a; }
  friend ComplexMatrix operator*(ComplexMatrix m, cplx a) { return m *= a; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{}) continue;
        for (std::size_t j = 0; j < N; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

 private:
  std::array<cplx, N * N> e_;
};

using Mat2 = ComplexMatrix<2>;
using Mat4 = ComplexMatrix<4>;

template <std::size_t N>
double max_abs_diff(const ComplexMatrix<N>& a, const ComplexMatrix<N>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

/// Kronecker product of two qubit operators.
inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 c;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) c(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return c;
}

/// Rank-one projector |psi><psi| from an unnormalized ket.
template <std::size_t N>
ComplexMatrix<N> outer(const std::array<cplx, N>& ket) {
  double n2 = 0.0;
  for (const cplx& v : ket) n2 += std::norm(v);
  ComplexMatrix<N> m;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) m(i, j) = ket[i] * std::conj(ket[j]) / n2;
  return m;
}

}  // namespace paulidisc
