#include "qcorr/measurements.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qcorr/error.hpp"

namespace qcorr {

namespace {

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

CMat2 bloch_operator(const Vec3& n) {
  return n[0] * pauli::x() + n[1] * pauli::y() + n[2] * pauli::z();
}

// (I ⊗ K) ρ (I ⊗ K)†
CMat4 conjugate_on_b(const CMat4& rho, const CMat2& k) {
  const CMat4 lifted = tensor(CMat2::identity(), k);
  return lifted * rho * lifted.adjoint();
}

}  // namespace

MeasurementBasis MeasurementBasis::from_unit(const Vec3& n) {
  const double len = norm3(n);
  if (!(std::abs(len - 1.0) <= kUnitTolerance)) {
    std::ostringstream os;
    os << "measurement direction must be a unit vector, |n| = " << len;
    throw DomainError(os.str());
  }
  return MeasurementBasis(n);
}

MeasurementBasis MeasurementBasis::normalized(const Vec3& n, double tolerance) {
  const double len = norm3(n);
  if (!(std::abs(len - 1.0) <= tolerance)) {
    std::ostringstream os;
    os << "measurement direction is not unit length within " << tolerance << ", |n| = " << len;
    throw DomainError(os.str());
  }
  return MeasurementBasis({n[0] / len, n[1] / len, n[2] / len});
}

MeasurementBasis MeasurementBasis::from_angles(double theta, double phi) {
  const double st = std::sin(theta);
  return MeasurementBasis({st * std::cos(phi), st * std::sin(phi), std::cos(theta)});
}

MeasurementBasis MeasurementBasis::from_unitary(double t, const Vec3& y) {
  const double len = std::sqrt(t * t + y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
  if (!(len > 0.0)) throw DomainError("unitary parameters (t, y) must not all vanish");
  t /= len;
  const double y1 = y[0] / len, y2 = y[1] / len, y3 = y[2] / len;
  return MeasurementBasis({2.0 * (-t * y2 + y1 * y3), 2.0 * (t * y1 + y2 * y3),
                           t * t + y3 * y3 - y1 * y1 - y2 * y2});
}

std::pair<double, double> MeasurementBasis::angles() const {
  const double theta = std::acos(std::clamp(n_[2], -1.0, 1.0));
  double phi = std::atan2(n_[1], n_[0]);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  return {theta, phi};
}

WeakStrength WeakStrength::finite(double x) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << "measurement strength must be positive, got x = " << x;
    throw DomainError(os.str());
  }
  if (x > kProjectiveThreshold) return projective();
  return WeakStrength(x);
}

double WeakStrength::tanh() const { return x_ ? std::tanh(*x_) : 1.0; }

double WeakStrength::sech() const { return x_ ? 1.0 / std::cosh(*x_) : 0.0; }

// (1 -/+ tanh x)/2 == 1/(1 + e^{±2x}); the right side keeps full relative
// precision when tanh x is close to 1.
double WeakStrength::low_weight() const { return x_ ? std::sqrt(1.0 / (1.0 + std::exp(2.0 * *x_))) : 0.0; }

double WeakStrength::high_weight() const { return x_ ? std::sqrt(1.0 / (1.0 + std::exp(-2.0 * *x_))) : 1.0; }

ProjectorPair projectors(const MeasurementBasis& basis) {
  const CMat2 ns = bloch_operator(basis.n());
  const CMat2 id = CMat2::identity();
  return {0.5 * (id + ns), 0.5 * (id - ns)};
}

WeakPair weak_pair(const MeasurementBasis& basis, const WeakStrength& x) {
  const auto [pi0, pi1] = projectors(basis);
  if (x.is_projective()) return {pi0, pi1};
  const double lo = x.low_weight();
  const double hi = x.high_weight();
  return {lo * pi0 + hi * pi1, hi * pi0 + lo * pi1};
}

std::array<Branch, 2> post_measurement_ensemble(const TwoQubitState& rho, const MeasurementBasis& basis,
                                                const WeakStrength& x) {
  const WeakPair pair = weak_pair(basis, x);
  std::array<Branch, 2> out;
  const CMat2* ops[2] = {&pair.p_plus, &pair.p_minus};
  for (int b = 0; b < 2; ++b) {
    const CMat4 post = conjugate_on_b(rho.matrix(), *ops[b]);
    const double p = post.trace().real();
    out[b].probability = p;
    if (p >= kMinBranchProbability) {
      CMat2 reduced = partial_trace_b(post);
      reduced *= 1.0 / p;
      out[b].conditional = reduced;
    }
  }
  return out;
}

TwoQubitState weak_dephase(const TwoQubitState& rho, const MeasurementBasis& basis, const WeakStrength& x) {
  const WeakPair pair = weak_pair(basis, x);
  return TwoQubitState::unchecked(conjugate_on_b(rho.matrix(), pair.p_plus) +
                                  conjugate_on_b(rho.matrix(), pair.p_minus));
}

}  // namespace qcorr
