#include <doctest.h>

#include <cmath>

#include "qcorr/channels.hpp"
#include "qcorr/error.hpp"
#include "support/samplers.hpp"

using namespace qcorr;
using qcorr::testing::Rng;

namespace frozen {
constexpr double kWernerDiscordP3 = 0.0588051302433823;
constexpr double kWernerSuperP3X2 = 0.07275015567410104;
constexpr double kWernerWeakDeficitP3X2 = 0.05472118697502326;
constexpr double kBellSuperResidualX25 = 0.006784919172567294;
}  // namespace frozen

namespace {
const auto kProj = WeakStrength::projective();
}

TEST_CASE("phase-flip parameters") {
  CHECK(PhaseFlipParams::from_probability(0.3).p == 0.3);
  CHECK_THROWS_AS(PhaseFlipParams::from_probability(-0.1), DomainError);
  CHECK_THROWS_AS(PhaseFlipParams::from_probability(1.1), DomainError);
  CHECK(PhaseFlipParams::from_rate(2.0, 0.5).p == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(PhaseFlipParams::from_rate(0.0, 3.0).p == 0.0);
  CHECK_THROWS_AS(PhaseFlipParams::from_rate(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(PhaseFlipParams::from_rate(1.0, -1.0), DomainError);
}

TEST_CASE("Kraus operators") {
  for (int i = 0; i <= 20; ++i) {
    const auto ch = phase_flip_channel(PhaseFlipParams::from_probability(0.05 * i));
    CHECK(ch.completeness_deviation() <= 1e-14);
  }
  CHECK(phase_flip_channel(PhaseFlipParams::from_probability(0.0)).operators.size() == 1);
  CHECK(phase_flip_channel(PhaseFlipParams::from_probability(0.4)).operators.size() == 4);
}

TEST_CASE("channel action") {
  Rng rng(5);
  const auto rho = TwoQubitState::from_matrix(qcorr::testing::random_density(rng));
  SUBCASE("p = 0 is the identity") {
    const auto out = apply_channel(rho, phase_flip_channel(PhaseFlipParams::from_probability(0.0)));
    CHECK(max_abs_diff(out.matrix(), rho.matrix()) <= 1e-15);
  }
  SUBCASE("p = 1 fully dephases both qubits") {
    const auto out = apply_channel(rho, phase_flip_channel(PhaseFlipParams::from_probability(1.0)));
    CMat4 diag;
    for (std::size_t i = 0; i < 4; ++i) diag(i, i) = rho.matrix()(i, i);
    CHECK(max_abs_diff(out.matrix(), diag) <= 1e-14);
  }
  SUBCASE("trace and positivity preserved") {
    for (double p : {0.1, 0.5, 0.9}) {
      const auto out = apply_channel(rho, phase_flip_channel(PhaseFlipParams::from_probability(p)));
      const auto diag = validate(out.matrix());
      CHECK(diag.ok);
      CHECK(diag.trace_deviation <= 1e-13);
    }
  }
  SUBCASE("composition of dephasing rates") {
    const double g = 0.7, t1 = 0.4, t2 = 0.9;
    const auto once = apply_channel(rho, phase_flip_channel(PhaseFlipParams::from_rate(g, t1 + t2)));
    const auto twice = apply_channel(apply_channel(rho, phase_flip_channel(PhaseFlipParams::from_rate(g, t1))),
                                     phase_flip_channel(PhaseFlipParams::from_rate(g, t2)));
    CHECK(max_abs_diff(once.matrix(), twice.matrix()) <= 1e-14);
  }
  SUBCASE("Bell-diagonal coefficient map") {
    const BellDiagonalParams c{{0.3, -0.4, 0.56}};
    for (double p : {0.0, 0.25, 0.6, 1.0}) {
      const auto par = PhaseFlipParams::from_probability(p);
      const auto evolved = evolve_bell(c, par);
      CHECK(evolved.c[0] == doctest::Approx(0.3 * (1 - p) * (1 - p)));
      CHECK(evolved.c[1] == doctest::Approx(-0.4 * (1 - p) * (1 - p)));
      CHECK(evolved.c[2] == 0.56);
      const auto out = apply_channel(bell_diagonal(c), phase_flip_channel(par));
      CHECK(max_abs_diff(out.matrix(), bell_diagonal_matrix(evolved)) <= 1e-14);
    }
  }
}

TEST_CASE("Werner channel closed forms") {
  const auto p3 = PhaseFlipParams::from_probability(0.3);
  CHECK(channel_measure_werner(MeasureKind::Discord, {0.5}, kProj, p3).value ==
        doctest::Approx(frozen::kWernerDiscordP3).epsilon(1e-12));
  CHECK(channel_measure_werner(MeasureKind::SuperDiscord, {0.5}, WeakStrength::finite(2.0), p3).value ==
        doctest::Approx(frozen::kWernerSuperP3X2).epsilon(1e-12));
  CHECK(channel_measure_werner(MeasureKind::WeakDeficit, {0.5}, WeakStrength::finite(2.0), p3).value ==
        doctest::Approx(frozen::kWernerWeakDeficitP3X2).epsilon(1e-12));
  CHECK(std::abs(channel_measure_werner(MeasureKind::WeakDeficit, {1.0}, WeakStrength::finite(2.0),
                                        PhaseFlipParams::from_probability(1.0))
                     .value) <= 1e-9);

  SUBCASE("p = 0 reproduces the noiseless values") {
    for (double z : {0.1, 0.5, 1.0})
      for (MeasureKind k : kAllKinds) {
        const auto x = WeakStrength::finite(1.5);
        CHECK(channel_measure_werner(k, {z}, x, PhaseFlipParams{}).value ==
              doctest::Approx(werner_measure(k, {z}, x).value).epsilon(1e-12));
      }
  }
  SUBCASE("agrees with the oracle on the evolved state") {
    OptimizerOptions opts;
    opts.n_theta = 24;
    opts.n_phi = 24;
    for (double z : {0.3, 0.8})
      for (double p : {0.2, 0.7})
        for (MeasureKind k : kAllKinds) {
          const auto x = WeakStrength::finite(1.1);
          const auto par = PhaseFlipParams::from_probability(p);
          const auto rho = apply_channel(werner({z}), phase_flip_channel(par));
          CHECK(std::abs(channel_measure_werner(k, {z}, x, par).value - measure_numeric(k, rho, x, opts).value) <=
                1e-6);
        }
  }
  SUBCASE("ordering and monotonicity in p") {
    for (double z : {0.2, 0.6, 1.0})
      for (double x : {0.3, 2.0}) {
        const auto wx = WeakStrength::finite(x);
        double prev[4] = {INFINITY, INFINITY, INFINITY, INFINITY};
        for (int i = 0; i <= 20; ++i) {
          const auto par = PhaseFlipParams::from_probability(0.05 * i);
          const double d = channel_measure_werner(MeasureKind::Discord, {z}, kProj, par).value;
          const double dw = channel_measure_werner(MeasureKind::SuperDiscord, {z}, wx, par).value;
          const double del = channel_measure_werner(MeasureKind::Deficit, {z}, kProj, par).value;
          const double dww = channel_measure_werner(MeasureKind::WeakDeficit, {z}, wx, par).value;
          CHECK(dww <= d + 1e-9);
          CHECK(d <= dw + 1e-9);
          CHECK(del == doctest::Approx(d).epsilon(1e-12));
          const double cur[4] = {d, dw, del, dww};
          for (int k = 0; k < 4; ++k) {
            CHECK(cur[k] <= prev[k] + 1e-10);
            prev[k] = cur[k];
          }
        }
      }
  }
}

TEST_CASE("Bell-diagonal channel closed forms") {
  const BellDiagonalParams c{{0.3, -0.4, 0.56}};
  CHECK(channel_measure_bell(MeasureKind::SuperDiscord, c, WeakStrength::finite(2.5),
                             PhaseFlipParams::from_probability(1.0))
            .value == doctest::Approx(frozen::kBellSuperResidualX25).epsilon(1e-12));
  CHECK(std::abs(channel_measure_bell(MeasureKind::Discord, c, kProj, PhaseFlipParams::from_probability(1.0)).value) <=
        1e-9);
  CHECK(channel_measure_bell(MeasureKind::Discord, c, kProj, PhaseFlipParams{}).value ==
        doctest::Approx(bell_measure(MeasureKind::Discord, c, kProj).value).epsilon(1e-12));
  for (double p : {0.1, 0.5, 0.9}) {
    const auto par = PhaseFlipParams::from_probability(p);
    const auto x = WeakStrength::finite(0.8);
    CHECK(channel_measure_bell(MeasureKind::SuperDiscord, c, x, par).value ==
          doctest::Approx(bell_measure(MeasureKind::SuperDiscord, evolve_bell(c, par), x).value).epsilon(1e-12));
  }
  CHECK_THROWS_AS(channel_measure_bell(MeasureKind::Discord, {{0.5, 0.2, 0.1}}, kProj, PhaseFlipParams{}), DomainError);
  CHECK_THROWS_AS(channel_measure_bell(MeasureKind::Deficit, c, kProj, PhaseFlipParams{}), DomainError);
}
