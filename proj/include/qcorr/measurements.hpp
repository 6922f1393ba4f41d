#pragma once

#include <array>
#include <optional>
#include <utility>

#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

using Vec3 = std::array<double, 3>;

/// Unit Bloch vector n fixing the projector pair Π0 = (I + n·σ)/2,
/// Π1 = (I - n·σ)/2 on qubit B.
class MeasurementBasis {
public:
  static constexpr double kUnitTolerance = 1e-12;

  MeasurementBasis() = default;

  // Throws DomainError unless |n| = 1 within kUnitTolerance.
  static MeasurementBasis from_unit(const Vec3& n);
  // Rescales n to unit length when |n| is within `tolerance` of 1.
  static MeasurementBasis normalized(const Vec3& n, double tolerance = 1e-6);
  // Polar angle from +z and azimuth from +x.
  static MeasurementBasis from_angles(double theta, double phi);
  // Axis of V Π0 V† for V = tI + i y·σ (t² + |y|² = 1 up to normalization).
  static MeasurementBasis from_unitary(double t, const Vec3& y);

  const Vec3& n() const { return n_; }
  std::pair<double, double> angles() const;

private:
  explicit MeasurementBasis(const Vec3& n) : n_(n) {}
  Vec3 n_{0.0, 0.0, 1.0};
};

/// Strength x of a weak measurement, or the projective limit x -> ∞.
class WeakStrength {
public:
  // Beyond this tanh x == 1 in double precision.
  static constexpr double kProjectiveThreshold = 350.0;

  static WeakStrength projective() { return WeakStrength(); }
  // Throws DomainError for x <= 0 or NaN; x > 350 becomes projective.
  static WeakStrength finite(double x);

  bool is_projective() const { return !x_.has_value(); }
  // Throws std::bad_optional_access when projective.
  double value() const { return x_.value(); }

  double tanh() const;
  double sech() const;
  /// sqrt((1 - tanh x)/2): weight on Π0 in P(x).
  double low_weight() const;
  /// sqrt((1 + tanh x)/2): weight on Π1 in P(x).
  double high_weight() const;

private:
  WeakStrength() = default;
  explicit WeakStrength(double x) : x_(x) {}
  std::optional<double> x_;
};

struct ProjectorPair {
  CMat2 pi0;
  CMat2 pi1;
};

struct WeakPair {
  CMat2 p_plus;   // P(x)
  CMat2 p_minus;  // P(-x)
};

ProjectorPair projectors(const MeasurementBasis& basis);

// P(x) = sqrt((1-tanh x)/2) Π0 + sqrt((1+tanh x)/2) Π1 and its partner.
// In the projective limit the pair is (Π0, Π1).
WeakPair weak_pair(const MeasurementBasis& basis, const WeakStrength& x);

inline constexpr double kMinBranchProbability = 1e-14;

struct Branch {
  double probability = 0.0;
  // Empty when the probability is below kMinBranchProbability.
  std::optional<CMat2> conditional;
};

// Outcome probabilities and conditional states of qubit A after measuring
// {P(x), P(-x)} on B; index 0 is the P(x) branch.
std::array<Branch, 2> post_measurement_ensemble(const TwoQubitState& rho, const MeasurementBasis& basis,
                                                const WeakStrength& x);

// Σ (I⊗P) ρ (I⊗P) over both operators of the pair.
TwoQubitState weak_dephase(const TwoQubitState& rho, const MeasurementBasis& basis, const WeakStrength& x);

}  // namespace qcorr
