#pragma once

// Quantum discord, super-quantum discord, one-way deficit and weak one-way
// deficit of two-qubit states, each available as a closed form for the
// Werner and Bell-diagonal families and as a numeric minimization over
// measurement directions on qubit B for arbitrary states.

#include <optional>

#include "qcorr/measure_kind.hpp"
#include "qcorr/measurements.hpp"
#include "qcorr/optimizer.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

enum class Method { ClosedForm, Numeric, FixedBasis };

std::string_view to_string(Method m);

struct MeasureResult {
  MeasureKind kind = MeasureKind::Discord;
  double value = 0.0;  // bits
  Method method = Method::ClosedForm;
  // Strength the value was computed at; empty means projective.
  std::optional<double> x;
  std::optional<MeasurementBasis> optimal_basis;
  std::optional<OptimizerTrace> trace;
  // A weak kind was asked for with x = PROJECTIVE and evaluated as its
  // projective counterpart.
  bool projective_substituted = false;
  // A value in (-1e-9, 0) was clamped to zero.
  bool clamped = false;
};

// Values below this are hard errors; values in (kNegativeTolerance, 0)
// are clamped to zero.
inline constexpr double kNegativeTolerance = -1e-9;

// Σ_± p(±x) S(ρ_{A|P(±x)}) in bits.
double conditional_entropy_weak(const TwoQubitState& rho, const MeasurementBasis& basis, const WeakStrength& x);

// The quantity minimized by each kind, evaluated at one basis:
// conditional entropy + S(ρ_B) - S(ρ) for the discords,
// S(dephased) - S(ρ) for the deficits. Projective kinds ignore x.
double measure_objective(MeasureKind kind, const TwoQubitState& rho, const MeasurementBasis& basis,
                         const WeakStrength& x);

MeasureResult werner_measure(MeasureKind kind, const WernerParams& z, const WeakStrength& x);

// Throws DomainError for unphysical c.
MeasureResult bell_measure(MeasureKind kind, const BellDiagonalParams& c, const WeakStrength& x);

MeasureResult measure_numeric(MeasureKind kind, const TwoQubitState& rho, const WeakStrength& x,
                              const OptimizerOptions& opts = {});

MeasureResult measure_at_basis(MeasureKind kind, const TwoQubitState& rho, const WeakStrength& x,
                               const MeasurementBasis& basis);

namespace closed_form {

// Raw closed-form expressions, no clamping. `t` is tanh x and `s` is
// sech x (t = 1, s = 0 in the projective limit).
double werner_discord(double z);
double werner_super_discord(double z, double t);
double werner_weak_deficit(double z, double s);
double bell_discord_like(const BellDiagonalParams& c, double t);
double bell_deficit_like(const BellDiagonalParams& c, double s);

}  // namespace closed_form

namespace detail {
// Applies the clamping rule and fills value/clamped; throws NumericalError
// for values below kNegativeTolerance.
void finalize_value(MeasureResult& r, double raw);
}  // namespace detail

}  // namespace qcorr
