#pragma once

// Local phase-flip noise acting on both qubits, and the closed-form
// correlation measures of the evolved Werner and Bell-diagonal states.

#include <optional>
#include <vector>

#include "qcorr/correlations.hpp"

namespace qcorr {

struct PhaseFlipParams {
  double p = 0.0;

  // Throws DomainError unless p is in [0, 1].
  static PhaseFlipParams from_probability(double p);
  // p = 1 - exp(-gamma t); throws for negative gamma or t.
  static PhaseFlipParams from_rate(double gamma, double t);

  // (1 - p)^2, the factor applied to c1 and c2.
  double coherence_factor() const { return (1.0 - p) * (1.0 - p); }
};

struct KrausChannel {
  std::vector<CMat4> operators;

  // max |Σ K†K - I|
  double completeness_deviation() const;
};

// Γ_i^(A) Γ_j^(B) with Γ_0 = sqrt(1 - p/2) I and Γ_1 = sqrt(p/2) σ3 on
// each qubit. Identically zero operators are omitted.
KrausChannel phase_flip_channel(const PhaseFlipParams& params);

TwoQubitState apply_channel(const TwoQubitState& rho, const KrausChannel& ch);

// Coefficients of the evolved Bell-diagonal state.
BellDiagonalParams evolve_bell(const BellDiagonalParams& c, const PhaseFlipParams& p);

MeasureResult channel_measure_werner(MeasureKind kind, const WernerParams& z, const WeakStrength& x,
                                     const PhaseFlipParams& p);

// Only Discord and SuperDiscord. Requires |c1| < |c2| < |c3|; throws
// DomainError otherwise (use measure_numeric on the evolved state).
MeasureResult channel_measure_bell(MeasureKind kind, const BellDiagonalParams& c, const WeakStrength& x,
                                   const PhaseFlipParams& p);

}  // namespace qcorr
