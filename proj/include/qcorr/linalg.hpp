#pragma once

// Fixed-size complex matrix arithmetic for one and two qubits.

#include <array>
#include <complex>
#include <cstddef>

namespace qcorr {

using cplx = std::complex<double>;

template <std::size_t N>
struct CMat {
  std::array<cplx, N * N> a{};

  static constexpr std::size_t dim = N;

  cplx& operator()(std::size_t i, std::size_t j) { return a[i * N + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * N + j]; }

  static CMat identity() {
    CMat m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  CMat adjoint() const {
    CMat m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  CMat& operator+=(const CMat& o) {
    for (std::size_t k = 0; k < N * N; ++k) a[k] += o.a[k];
    return *this;
  }
  CMat& operator-=(const CMat& o) {
    for (std::size_t k = 0; k < N * N; ++k) a[k] -= o.a[k];
    return *this;
  }
  CMat& operator*=(cplx s) {
    for (auto& v : a) v *= s;
    return *this;
  }

  friend CMat operator+(CMat l, const CMat& r) { return l += r; }
  friend CMat operator-(CMat l, const CMat& r) { return l -= r; }
  friend CMat operator*(CMat m, cplx s) { return m *= s; }
  friend CMat operator*(cplx s, CMat m) { return m *= s; }

  friend CMat operator*(const CMat& l, const CMat& r) {
    CMat m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const cplx lik = l(i, k);
        if (lik == cplx{}) continue;
        for (std::size_t j = 0; j < N; ++j) m(i, j) += lik * r(k, j);
      }
    return m;
  }

  friend bool operator==(const CMat&, const CMat&) = default;
};

using CMat2 = CMat<2>;
using CMat4 = CMat<4>;

namespace pauli {
CMat2 identity();
CMat2 x();
CMat2 y();
CMat2 z();
// sigma(0..2) -> x, y, z
CMat2 sigma(int axis);
}  // namespace pauli

// Largest entrywise modulus of a - b.
template <std::size_t N>
double max_abs_diff(const CMat<N>& a, const CMat<N>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < N * N; ++k) m = std::max(m, std::abs(a.a[k] - b.a[k]));
  return m;
}

template <std::size_t N>
double hermiticity_deviation(const CMat<N>& m) {
  return max_abs_diff(m, m.adjoint());
}

CMat4 tensor(const CMat2& a, const CMat2& b);
CMat2 partial_trace_a(const CMat4& rho);
CMat2 partial_trace_b(const CMat4& rho);

inline constexpr double kHermitianTolerance = 1e-12;

// Eigenvalues in descending order.
using Spectrum2 = std::array<double, 2>;
using Spectrum = std::array<double, 4>;

// Throws DomainError when the input is not Hermitian within
// kHermitianTolerance. The 4x4 solver runs cyclic Jacobi on the real
// 8x8 symmetric embedding [[Re, -Im], [Im, Re]] whose spectrum is the
// complex spectrum with every eigenvalue doubled.
Spectrum2 hermitian_eigenvalues(const CMat2& m);
Spectrum hermitian_eigenvalues(const CMat4& m);

// y log2 y with 0 log 0 = 0.
double xlog2x(double y);

// Shannon entropy in bits of a probability vector. Entries in [-1e-10, 0)
// are clipped to zero; anything more negative throws DomainError.
double shannon_entropy(const double* p, std::size_t n);

template <std::size_t K>
double shannon_entropy(const std::array<double, K>& p) {
  return shannon_entropy(p.data(), K);
}

// Binary entropy H(q) in bits.
double binary_entropy(double q);

// von Neumann entropy in bits.
double von_neumann_entropy(const CMat2& rho);
double von_neumann_entropy(const CMat4& rho);

}  // namespace qcorr
