#include "qcorr/channels.hpp"

#include <cmath>
#include <sstream>

#include "qcorr/error.hpp"

namespace qcorr {

PhaseFlipParams PhaseFlipParams::from_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "phase-flip probability p = " << p << " outside [0, 1]";
    throw DomainError(os.str());
  }
  return PhaseFlipParams{p};
}

PhaseFlipParams PhaseFlipParams::from_rate(double gamma, double t) {
  if (!(gamma >= 0.0) || !(t >= 0.0)) throw DomainError("phase damping rate and time must be non-negative");
  return from_probability(-std::expm1(-gamma * t));
}

double KrausChannel::completeness_deviation() const {
  CMat4 sum;
  for (const CMat4& k : operators) sum += k.adjoint() * k;
  return max_abs_diff(sum, CMat4::identity());
}

KrausChannel phase_flip_channel(const PhaseFlipParams& params) {
  const PhaseFlipParams checked = PhaseFlipParams::from_probability(params.p);
  const double keep = std::sqrt(1.0 - 0.5 * checked.p);
  const double flip = std::sqrt(0.5 * checked.p);
  const CMat2 single[2] = {keep * CMat2::identity(), flip * pauli::z()};

  KrausChannel ch;
  for (const CMat2& ga : single) {
    for (const CMat2& gb : single) {
      CMat4 k = tensor(ga, CMat2::identity()) * tensor(CMat2::identity(), gb);
      if (k == CMat4{}) continue;
      ch.operators.push_back(k);
    }
  }
  return ch;
}

TwoQubitState apply_channel(const TwoQubitState& rho, const KrausChannel& ch) {
  CMat4 out;
  for (const CMat4& k : ch.operators) out += k * rho.matrix() * k.adjoint();
  return TwoQubitState::unchecked(out);
}

BellDiagonalParams evolve_bell(const BellDiagonalParams& c, const PhaseFlipParams& p) {
  const double q = p.coherence_factor();
  return {{q * c.c[0], q * c.c[1], c.c[2]}};
}

namespace {

// The two p-dependent eigenvalues of the evolved Werner state; the other
// two stay at (1-z)/4.
struct EvolvedWerner {
  double low;   // (1 - z + 4pz - 2p²z)/4
  double high;  // (1 + 3z - 4pz + 2p²z)/4
};

EvolvedWerner evolved_werner(double z, double p) {
  const double shift = 4.0 * p * z - 2.0 * p * p * z;
  return {0.25 * (1.0 - z + shift), 0.25 * (1.0 + 3.0 * z - shift)};
}

}  // namespace

MeasureResult channel_measure_werner(MeasureKind kind, const WernerParams& params, const WeakStrength& x,
                                     const PhaseFlipParams& pf) {
  (void)werner(params);
  const PhaseFlipParams checked = PhaseFlipParams::from_probability(pf.p);
  const double z = params.z;
  const double p = checked.p;
  const EvolvedWerner ev = evolved_werner(z, p);
  const double common = xlog2x(ev.low) + xlog2x(ev.high);

  MeasureResult r;
  r.kind = kind;
  r.method = Method::ClosedForm;
  const WeakStrength eff = is_weak(kind) ? x : WeakStrength::projective();
  if (!eff.is_projective()) r.x = eff.value();
  r.projective_substituted = is_weak(kind) && x.is_projective();

  // ND (one-way deficit) and ND_w differ only in the conditional term.
  auto nd_like = [&](double a) {
    return common + 2.0 * xlog2x(0.25 * (1.0 - z)) + 1.0 - xlog2x(0.5 * (1.0 + a)) - xlog2x(0.5 * (1.0 - a));
  };

  double raw = 0.0;
  switch (kind) {
    case MeasureKind::Discord:
    case MeasureKind::Deficit:
      raw = nd_like(z);
      break;
    case MeasureKind::SuperDiscord:
      raw = nd_like(z * eff.tanh());
      break;
    case MeasureKind::WeakDeficit: {
      const double mid = 0.25 * (1.0 + z);
      const double split = checked.coherence_factor() * z * eff.sech() / 2.0;
      raw = common - xlog2x(mid + split) - xlog2x(mid - split);
      break;
    }
  }
  detail::finalize_value(r, raw);
  return r;
}

MeasureResult channel_measure_bell(MeasureKind kind, const BellDiagonalParams& c, const WeakStrength& x,
                                   const PhaseFlipParams& pf) {
  if (is_deficit(kind))
    throw DomainError("Bell-diagonal channel closed forms cover discord and super-discord only");
  (void)bell_diagonal(c);
  const PhaseFlipParams checked = PhaseFlipParams::from_probability(pf.p);
  const double a1 = std::abs(c.c[0]), a2 = std::abs(c.c[1]), a3 = std::abs(c.c[2]);
  if (!(a1 < a2 && a2 < a3)) {
    std::ostringstream os;
    os << "closed form requires |c1| < |c2| < |c3|, got (" << c.c[0] << ", " << c.c[1] << ", " << c.c[2]
       << "); use the numeric method on the evolved state instead";
    throw DomainError(os.str());
  }

  MeasureResult r;
  r.kind = kind;
  r.method = Method::ClosedForm;
  const WeakStrength eff = kind == MeasureKind::SuperDiscord ? x : WeakStrength::projective();
  if (!eff.is_projective()) r.x = eff.value();
  r.projective_substituted = kind == MeasureKind::SuperDiscord && x.is_projective();

  // Σ (4λ') log2(4λ') / 4 over the evolved weights, minus the c3 term.
  const BellDiagonalParams ev = evolve_bell(c, checked);
  double raw = 0.0;
  for (double l : ev.eigenvalues()) raw += 0.25 * xlog2x(4.0 * l);
  const double a = c.c[2] * eff.tanh();
  raw -= 0.5 * (xlog2x(1.0 - a) + xlog2x(1.0 + a));
  detail::finalize_value(r, raw);
  return r;
}

}  // namespace qcorr
