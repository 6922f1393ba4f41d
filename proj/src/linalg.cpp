#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "qcorr/error.hpp"

namespace qcorr {

namespace pauli {
CMat2 identity() { return CMat2::identity(); }

CMat2 x() {
  CMat2 m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

CMat2 y() {
  CMat2 m;
  m(0, 1) = cplx(0.0, -1.0);
  m(1, 0) = cplx(0.0, 1.0);
  return m;
}

CMat2 z() {
  CMat2 m;
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

CMat2 sigma(int axis) {
  switch (axis) {
    case 0: return x();
    case 1: return y();
    case 2: return z();
    default: throw DomainError("pauli axis must be 0, 1 or 2");
  }
}
}  // namespace pauli

CMat4 tensor(const CMat2& a, const CMat2& b) {
  CMat4 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

CMat2 partial_trace_b(const CMat4& rho) {
  CMat2 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) r(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
  return r;
}

CMat2 partial_trace_a(const CMat4& rho) {
  CMat2 r;
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l = 0; l < 2; ++l) r(k, l) = rho(k, l) + rho(2 + k, 2 + l);
  return r;
}

namespace {

void require_hermitian(double deviation) {
  if (!(deviation <= kHermitianTolerance))
    throw DomainError("matrix is not Hermitian (max |M - M^H| = " + std::to_string(deviation) + ")");
}

// Cyclic Jacobi for a real symmetric N x N matrix; returns the diagonal.
template <std::size_t N>
std::array<double, N> jacobi_eigenvalues(std::array<double, N * N> a) {
  auto at = [&a](std::size_t i, std::size_t j) -> double& { return a[i * N + j]; };

  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return {};

  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) off += at(p, q) * at(p, q);
    if (off <= 1e-34 * scale * scale) break;

    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < N; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }

  std::array<double, N> d;
  for (std::size_t i = 0; i < N; ++i) d[i] = at(i, i);
  return d;
}

}  // namespace

Spectrum2 hermitian_eigenvalues(const CMat2& m) {
  require_hermitian(hermiticity_deviation(m));
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double half_gap = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
  const double mid = 0.5 * (a + d);
  return {mid + half_gap, mid - half_gap};
}

Spectrum hermitian_eigenvalues(const CMat4& m) {
  require_hermitian(hermiticity_deviation(m));

  // Symmetrize first so round-off in the input cannot leak asymmetry.
  constexpr std::size_t n = 4;
  std::array<double, 64> big{};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const cplx h = 0.5 * (m(i, j) + std::conj(m(j, i)));
      big[i * 8 + j] = h.real();
      big[(i + 4) * 8 + (j + 4)] = h.real();
      big[(i + 4) * 8 + j] = h.imag();
      big[i * 8 + (j + 4)] = -h.imag();
    }
  }
  auto ev = jacobi_eigenvalues<8>(big);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  // Each eigenvalue appears twice; average the pairs.
  Spectrum out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = 0.5 * (ev[2 * i] + ev[2 * i + 1]);
  return out;
}

double xlog2x(double y) { return y <= 0.0 ? 0.0 : y * std::log2(y); }

double shannon_entropy(const double* p, std::size_t n) {
  constexpr double kClip = 1e-10;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = p[i];
    if (v < -kClip || v > 1.0 + kClip)
      throw DomainError("probability " + std::to_string(v) + " outside [0, 1]");
    v = std::clamp(v, 0.0, 1.0);
    s -= xlog2x(v);
  }
  return s;
}

double binary_entropy(double q) {
  const std::array<double, 2> p{q, 1.0 - q};
  return shannon_entropy(p);
}

double von_neumann_entropy(const CMat2& rho) { return shannon_entropy(hermitian_eigenvalues(rho)); }

double von_neumann_entropy(const CMat4& rho) { return shannon_entropy(hermitian_eigenvalues(rho)); }

}  // namespace qcorr
