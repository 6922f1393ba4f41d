#include <doctest.h>

#include "qcorr/error.hpp"
#include "qcorr/states.hpp"
#include "support/samplers.hpp"

using namespace qcorr;

TEST_CASE("bell_diagonal construction") {
  CHECK(bell_diagonal({{0, 0, 0}}).matrix() == 0.25 * CMat4::identity());

  const CMat4 m = bell_diagonal({{0.3, -0.4, 0.56}}).matrix();
  CHECK(m(0, 0).real() == doctest::Approx(0.39));
  CHECK(m(1, 1).real() == doctest::Approx(0.11));
  CHECK(m(0, 3).real() == doctest::Approx(0.175));
  CHECK(m(1, 2).real() == doctest::Approx(-0.025));

  SUBCASE("pure Bell projector is idempotent") {
    const CMat4 p = bell_diagonal({{1.0, -1.0, 1.0}}).matrix();
    CHECK(max_abs_diff(p * p, p) < 1e-15);
  }
  SUBCASE("unphysical coefficients name the violated eigenvalue") {
    try {
      (void)bell_diagonal({{0.9, 0.9, 0.9}});
      FAIL("expected DomainError");
    } catch (const DomainError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("lambda5") != std::string::npos);
      CHECK(msg.find("-0.425") != std::string::npos);
    }
  }
  SUBCASE("coefficient out of [-1, 1]") { CHECK_THROWS_AS(bell_diagonal({{1.5, 0, 0}}), DomainError); }
}

TEST_CASE("werner construction") {
  CHECK(werner({0.0}).matrix() == 0.25 * CMat4::identity());

  SUBCASE("z = 1 is the singlet projector") {
    // |Ψ-> = (|01> - |10>)/sqrt 2
    CMat4 singlet;
    singlet(1, 1) = singlet(2, 2) = 0.5;
    singlet(1, 2) = singlet(2, 1) = -0.5;
    CHECK(max_abs_diff(werner({1.0}).matrix(), singlet) < 1e-15);
  }
  SUBCASE("z = 0.5 spectrum") {
    const auto ev = hermitian_eigenvalues(werner({0.5}).matrix());
    CHECK(ev[0] == doctest::Approx(0.625));
    for (int i = 1; i < 4; ++i) CHECK(ev[i] == doctest::Approx(0.125));
  }
  SUBCASE("equals bell_diagonal(-z, -z, -z) exactly") {
    for (double z : {-1.0 / 3.0, -0.1, 0.0, 0.37, 1.0})
      CHECK(werner({z}).matrix() == bell_diagonal({{-z, -z, -z}}).matrix());
  }
  SUBCASE("range") {
    CHECK_NOTHROW(werner({-1.0 / 3.0}));
    CHECK_THROWS_AS(werner({-0.4}), DomainError);
    CHECK_THROWS_AS(werner({1.01}), DomainError);
  }
}

TEST_CASE("validate") {
  CHECK(validate(0.25 * CMat4::identity()).ok);

  CMat4 heavy = 0.25 * CMat4::identity();
  heavy(0, 0) = 0.35;
  const auto d = validate(heavy);
  CHECK_FALSE(d.ok);
  CHECK(d.trace_deviation == doctest::Approx(0.1));

  const auto neg = validate(bell_diagonal_matrix({{0.9, 0.9, 0.9}}));
  CHECK_FALSE(neg.ok);
  CHECK(neg.min_eigenvalue == doctest::Approx(-0.425));

  CMat4 skew = 0.25 * CMat4::identity();
  skew(0, 1) = cplx(0.0, 0.1);
  CHECK_FALSE(validate(skew).ok);
  CHECK_THROWS_AS(TwoQubitState::from_matrix(skew), DomainError);
}

TEST_CASE("tetrahedron membership agrees with the spectrum") {
  qcorr::testing::Rng rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 0; n < 1000; ++n) {
    const BellDiagonalParams p{{u(rng), u(rng), u(rng)}};
    const double min_ev = hermitian_eigenvalues(bell_diagonal_matrix(p))[3];
    const bool accepted = [&] {
      try {
        (void)bell_diagonal(p);
        return true;
      } catch (const DomainError&) {
        return false;
      }
    }();
    CHECK(accepted == (min_ev >= -1e-12));
    if (accepted) {
      const CMat2 half = 0.5 * CMat2::identity();
      CHECK(max_abs_diff(partial_trace_a(bell_diagonal(p).matrix()), half) < 1e-15);
      CHECK(max_abs_diff(partial_trace_b(bell_diagonal(p).matrix()), half) < 1e-15);
    }
  }
}
