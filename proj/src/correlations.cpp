#include "qcorr/correlations.hpp"

#include <cmath>
#include <sstream>

#include "qcorr/error.hpp"

namespace qcorr {

std::string_view to_string(MeasureKind k) {
  switch (k) {
    case MeasureKind::Discord: return "discord";
    case MeasureKind::SuperDiscord: return "super-discord";
    case MeasureKind::Deficit: return "deficit";
    case MeasureKind::WeakDeficit: return "weak-deficit";
  }
  return "?";
}

std::optional<MeasureKind> parse_measure_kind(std::string_view s) {
  for (MeasureKind k : kAllKinds)
    if (to_string(k) == s) return k;
  return std::nullopt;
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed_form";
    case Method::Numeric: return "numeric";
    case Method::FixedBasis: return "fixed_basis";
  }
  return "?";
}

namespace detail {

void finalize_value(MeasureResult& r, double raw) {
  if (!(raw >= kNegativeTolerance)) {
    std::ostringstream os;
    os << to_string(r.kind) << " evaluated to " << raw << " bits, below the tolerance " << kNegativeTolerance;
    throw NumericalError(os.str());
  }
  if (raw < 0.0) {
    r.value = 0.0;
    r.clamped = true;
  } else {
    r.value = raw;
  }
}

}  // namespace detail

namespace {

// The strength a kind is actually evaluated at.
WeakStrength effective_strength(MeasureKind kind, const WeakStrength& x) {
  return is_weak(kind) ? x : WeakStrength::projective();
}

MeasureResult start_result(MeasureKind kind, const WeakStrength& x, Method method) {
  MeasureResult r;
  r.kind = kind;
  r.method = method;
  const WeakStrength eff = effective_strength(kind, x);
  if (!eff.is_projective()) r.x = eff.value();
  r.projective_substituted = is_weak(kind) && x.is_projective();
  return r;
}

}  // namespace

namespace closed_form {

double werner_discord(double z) {
  return 0.25 * xlog2x(1.0 - z) - 0.5 * xlog2x(1.0 + z) + 0.25 * xlog2x(1.0 + 3.0 * z);
}

double werner_super_discord(double z, double t) {
  return 3.0 * xlog2x(0.25 * (1.0 - z)) + xlog2x(0.25 * (1.0 + 3.0 * z)) + 1.0 -
         (xlog2x(0.5 * (1.0 - z * t)) + xlog2x(0.5 * (1.0 + z * t)));
}

double werner_weak_deficit(double z, double s) {
  const double mid = 0.25 * (1.0 + z);
  const double split = 0.5 * z * s;
  return xlog2x(0.25 * (1.0 + 3.0 * z)) + xlog2x(0.25 * (1.0 - z)) - xlog2x(mid + split) - xlog2x(mid - split);
}

// Σ λ log2 λ + 2 - [(1-a)/2 log2(1-a) + (1+a)/2 log2(1+a)], a = max|c_i| · t
double bell_discord_like(const BellDiagonalParams& c, double t) {
  double neg_s = 0.0;
  for (double l : c.eigenvalues()) neg_s += xlog2x(l);
  const double a = c.max_abs() * t;
  return neg_s + 2.0 - 0.5 * (xlog2x(1.0 - a) + xlog2x(1.0 + a));
}

// S(dephased) - S(ρ); dephasing along the dominant axis keeps that
// coefficient and scales the other two by s.
double bell_deficit_like(const BellDiagonalParams& c, double s) {
  const int k = c.dominant_axis();
  BellDiagonalParams dephased = c;
  for (int i = 0; i < 3; ++i)
    if (i != k) dephased.c[i] *= s;
  double v = 0.0;
  for (double l : c.eigenvalues()) v += xlog2x(l);
  for (double l : dephased.eigenvalues()) v -= xlog2x(l);
  return v;
}

}  // namespace closed_form

double conditional_entropy_weak(const TwoQubitState& rho, const MeasurementBasis& basis, const WeakStrength& x) {
  double s = 0.0;
  for (const Branch& b : post_measurement_ensemble(rho, basis, x))
    if (b.conditional) s += b.probability * von_neumann_entropy(*b.conditional);
  return s;
}

namespace {

struct Baseline {
  double s_ab;
  double s_b;
};

Baseline baseline(const TwoQubitState& rho) {
  return {von_neumann_entropy(rho.matrix()), von_neumann_entropy(partial_trace_a(rho.matrix()))};
}

double objective_with(MeasureKind kind, const TwoQubitState& rho, const Baseline& base,
                      const MeasurementBasis& basis, const WeakStrength& x) {
  const WeakStrength eff = effective_strength(kind, x);
  if (is_deficit(kind)) return von_neumann_entropy(weak_dephase(rho, basis, eff).matrix()) - base.s_ab;
  return conditional_entropy_weak(rho, basis, eff) + base.s_b - base.s_ab;
}

}  // namespace

double measure_objective(MeasureKind kind, const TwoQubitState& rho, const MeasurementBasis& basis,
                         const WeakStrength& x) {
  return objective_with(kind, rho, baseline(rho), basis, x);
}

MeasureResult werner_measure(MeasureKind kind, const WernerParams& params, const WeakStrength& x) {
  (void)werner(params);  // range check
  MeasureResult r = start_result(kind, x, Method::ClosedForm);
  const WeakStrength eff = effective_strength(kind, x);
  const double z = params.z;
  double raw = 0.0;
  switch (kind) {
    case MeasureKind::Discord:
    case MeasureKind::Deficit:  // equal to the discord for this family
      raw = closed_form::werner_discord(z);
      break;
    case MeasureKind::SuperDiscord:
      raw = eff.is_projective() ? closed_form::werner_discord(z) : closed_form::werner_super_discord(z, eff.tanh());
      break;
    case MeasureKind::WeakDeficit:
      raw = closed_form::werner_weak_deficit(z, eff.sech());
      break;
  }
  detail::finalize_value(r, raw);
  return r;
}

MeasureResult bell_measure(MeasureKind kind, const BellDiagonalParams& c, const WeakStrength& x) {
  (void)bell_diagonal(c);  // physicality check with a descriptive error
  MeasureResult r = start_result(kind, x, Method::ClosedForm);
  const WeakStrength eff = effective_strength(kind, x);
  const double raw = is_deficit(kind) ? closed_form::bell_deficit_like(c, eff.sech())
                                      : closed_form::bell_discord_like(c, eff.tanh());
  detail::finalize_value(r, raw);
  return r;
}

MeasureResult measure_numeric(MeasureKind kind, const TwoQubitState& rho, const WeakStrength& x,
                              const OptimizerOptions& opts) {
  MeasureResult r = start_result(kind, x, Method::Numeric);
  const Baseline base = baseline(rho);
  const SphereMinimum m = minimize_on_sphere(
      [&](const MeasurementBasis& n) { return objective_with(kind, rho, base, n, x); }, opts);
  r.optimal_basis = m.argmin;
  r.trace = m.trace;
  detail::finalize_value(r, m.value);
  return r;
}

MeasureResult measure_at_basis(MeasureKind kind, const TwoQubitState& rho, const WeakStrength& x,
                               const MeasurementBasis& basis) {
  MeasureResult r = start_result(kind, x, Method::FixedBasis);
  r.optimal_basis = basis;
  detail::finalize_value(r, measure_objective(kind, rho, basis, x));
  return r;
}

}  // namespace qcorr
