#include "qcorr/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcorr/error.hpp"

namespace qcorr {

std::array<double, 4> BellDiagonalParams::eigenvalues() const {
  const auto [c1, c2, c3] = c;
  return {0.25 * (1.0 - c1 - c2 - c3), 0.25 * (1.0 - c1 + c2 + c3), 0.25 * (1.0 + c1 - c2 + c3),
          0.25 * (1.0 + c1 + c2 - c3)};
}

bool BellDiagonalParams::physical() const {
  for (double ci : c)
    if (!std::isfinite(ci) || std::abs(ci) > 1.0 + kPhysicalityTolerance) return false;
  const auto lam = eigenvalues();
  return std::all_of(lam.begin(), lam.end(), [](double l) { return l >= -kPhysicalityTolerance; });
}

double BellDiagonalParams::max_abs() const {
  return std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2])});
}

int BellDiagonalParams::dominant_axis() const {
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(c[i]) > std::abs(c[k])) k = i;
  return k;
}

TwoQubitState TwoQubitState::from_matrix(const CMat4& m) {
  const auto diag = validate(m);
  if (!diag.ok) throw DomainError("invalid density matrix: " + diag.message);
  return TwoQubitState(m);
}

CMat4 bell_diagonal_matrix(const BellDiagonalParams& params) {
  // Entries written out directly so the diagonal and anti-diagonal are exact.
  const auto [c1, c2, c3] = params.c;
  CMat4 m;
  m(0, 0) = m(3, 3) = 0.25 * (1.0 + c3);
  m(1, 1) = m(2, 2) = 0.25 * (1.0 - c3);
  m(0, 3) = m(3, 0) = 0.25 * (c1 - c2);
  m(1, 2) = m(2, 1) = 0.25 * (c1 + c2);
  return m;
}

TwoQubitState bell_diagonal(const BellDiagonalParams& params) {
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(params.c[i]) || std::abs(params.c[i]) > 1.0 + kPhysicalityTolerance) {
      std::ostringstream os;
      os << "Bell-diagonal coefficient c" << (i + 1) << " = " << params.c[i] << " outside [-1, 1]";
      throw DomainError(os.str());
    }
  }
  const auto lam = params.eigenvalues();
  for (int i = 0; i < 4; ++i) {
    if (lam[i] < -kPhysicalityTolerance) {
      std::ostringstream os;
      os << "unphysical Bell-diagonal coefficients (" << params.c[0] << ", " << params.c[1] << ", "
         << params.c[2] << "): eigenvalue lambda" << (i + 5) << " = " << lam[i] << " < 0";
      throw DomainError(os.str());
    }
  }

  return TwoQubitState::unchecked(bell_diagonal_matrix(params));
}

TwoQubitState werner(const WernerParams& params) {
  if (!(params.z >= WernerParams::kMin - kPhysicalityTolerance &&
        params.z <= WernerParams::kMax + kPhysicalityTolerance)) {
    std::ostringstream os;
    os << "Werner parameter z = " << params.z << " outside [-1/3, 1]";
    throw DomainError(os.str());
  }
  return bell_diagonal(params.as_bell_diagonal());
}

StateDiagnostics validate(const CMat4& m) {
  StateDiagnostics d;
  d.hermiticity_deviation = hermiticity_deviation(m);
  d.trace_deviation = std::abs(m.trace() - cplx(1.0, 0.0));
  std::ostringstream os;
  if (!std::all_of(m.a.begin(), m.a.end(), [](cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); })) {
    d.message = "non-finite entry";
    d.min_eigenvalue = std::nan("");
    return d;
  }
  if (d.hermiticity_deviation > kHermitianTolerance) {
    os << "not Hermitian (deviation " << d.hermiticity_deviation << ")";
    d.message = os.str();
    d.min_eigenvalue = std::nan("");
    return d;
  }
  d.min_eigenvalue = hermitian_eigenvalues(m)[3];
  if (d.trace_deviation > kTraceTolerance) {
    os << "trace deviates from 1 by " << d.trace_deviation;
  } else if (d.min_eigenvalue < -kMinEigenvalueTolerance) {
    os << "negative eigenvalue " << d.min_eigenvalue;
  } else {
    d.ok = true;
  }
  d.message = os.str();
  return d;
}

}  // namespace qcorr
