#pragma once

#include <array>
#include <string>

#include "qcorr/linalg.hpp"

namespace qcorr {

inline constexpr double kPhysicalityTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kMinEigenvalueTolerance = 1e-10;

/// Correlation coefficients (c1, c2, c3) of a Bell-diagonal state
/// (I⊗I + Σ c_i σ_i⊗σ_i)/4.
struct BellDiagonalParams {
  std::array<double, 3> c{};

  /// Bell-basis weights in the fixed order
  /// (1-c1-c2-c3, 1-c1+c2+c3, 1+c1-c2+c3, 1+c1+c2-c3) / 4.
  std::array<double, 4> eigenvalues() const;
  bool physical() const;
  double max_abs() const;
  /// Index of the largest |c_i|; ties resolve to the lowest index.
  int dominant_axis() const;

  friend bool operator==(const BellDiagonalParams&, const BellDiagonalParams&) = default;
};

struct WernerParams {
  double z = 0.0;

  static constexpr double kMin = -1.0 / 3.0;
  static constexpr double kMax = 1.0;

  BellDiagonalParams as_bell_diagonal() const { return {{-z, -z, -z}}; }
};

/// A two-qubit density matrix. Construction through the named factories
/// validates; `unchecked` is for intermediate results that are physical by
/// construction.
class TwoQubitState {
public:
  static TwoQubitState from_matrix(const CMat4& m);
  static TwoQubitState unchecked(const CMat4& m) { return TwoQubitState(m); }

  const CMat4& matrix() const { return m_; }

private:
  explicit TwoQubitState(const CMat4& m) : m_(m) {}
  CMat4 m_;
};

// The matrix (I⊗I + Σ c_i σ_i⊗σ_i)/4 without any physicality check.
CMat4 bell_diagonal_matrix(const BellDiagonalParams& params);

// Throws DomainError naming the violated eigenvalue when c is unphysical.
TwoQubitState bell_diagonal(const BellDiagonalParams& params);
// Throws DomainError when z is outside [-1/3, 1].
TwoQubitState werner(const WernerParams& params);

struct StateDiagnostics {
  double hermiticity_deviation = 0.0;
  double trace_deviation = 0.0;  // |tr - 1|, real part; imaginary part folded in
  double min_eigenvalue = 0.0;
  bool ok = false;
  // Human readable reason for the first failed check; empty when ok.
  std::string message;
};

StateDiagnostics validate(const CMat4& m);
inline StateDiagnostics validate(const TwoQubitState& s) { return validate(s.matrix()); }

}  // namespace qcorr
