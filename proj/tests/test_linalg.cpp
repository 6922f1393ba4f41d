#include <doctest.h>

#include "qcorr/error.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"
#include "support/samplers.hpp"

using namespace qcorr;
using qcorr::testing::Rng;

TEST_CASE("tensor of Pauli matrices") {
  SUBCASE("sigma_z x sigma_z is diag(1,-1,-1,1)") {
    CMat4 expected;
    expected(0, 0) = 1.0;
    expected(1, 1) = -1.0;
    expected(2, 2) = -1.0;
    expected(3, 3) = 1.0;
    CHECK(tensor(pauli::z(), pauli::z()) == expected);
  }
  SUBCASE("identity") { CHECK(tensor(CMat2::identity(), CMat2::identity()) == CMat4::identity()); }
  SUBCASE("sigma_x x sigma_y is [[0, s_y], [s_y, 0]]") {
    // Hand expansion: the off-diagonal 2x2 blocks of σ1 carry σ2.
    CMat4 expected;
    expected(0, 3) = cplx(0, -1);
    expected(1, 2) = cplx(0, 1);
    expected(2, 1) = cplx(0, -1);
    expected(3, 0) = cplx(0, 1);
    CHECK(tensor(pauli::x(), pauli::y()) == expected);
  }
}

TEST_CASE("tensor is bilinear and multiplicative in trace") {
  Rng rng(7);
  for (int n = 0; n < 20; ++n) {
    const CMat2 a = qcorr::testing::random_density2(rng);
    const CMat2 b = qcorr::testing::random_density2(rng);
    const CMat2 c = qcorr::testing::random_density2(rng);
    const cplx s(0.3, -1.2);
    CHECK(max_abs_diff(tensor(a + s * c, b), tensor(a, b) + s * tensor(c, b)) < 1e-14);
    CHECK(std::abs(tensor(a, b).trace() - a.trace() * b.trace()) < 1e-14);
    CHECK(max_abs_diff(partial_trace_b(tensor(a, b)), a * b.trace()) < 1e-14);
    CHECK(max_abs_diff(partial_trace_a(tensor(a, b)), b * a.trace()) < 1e-14);
  }
}

TEST_CASE("partial traces of the state families") {
  const CMat2 half = 0.5 * CMat2::identity();
  CHECK(max_abs_diff(partial_trace_b(werner({1.0}).matrix()), half) < 1e-15);
  CHECK(max_abs_diff(partial_trace_a(bell_diagonal({{0.3, -0.4, 0.56}}).matrix()), half) < 1e-15);
  CHECK(von_neumann_entropy(partial_trace_a(bell_diagonal({{0.3, -0.4, 0.56}}).matrix())) == doctest::Approx(1.0));
}

TEST_CASE("hermitian eigenvalues") {
  SUBCASE("Bell-diagonal example, descending") {
    const auto ev = hermitian_eigenvalues(bell_diagonal({{0.3, -0.4, 0.56}}).matrix());
    CHECK(ev[0] == doctest::Approx(0.565).epsilon(1e-13));
    CHECK(ev[1] == doctest::Approx(0.215).epsilon(1e-13));
    CHECK(ev[2] == doctest::Approx(0.135).epsilon(1e-13));
    CHECK(ev[3] == doctest::Approx(0.085).epsilon(1e-13));
  }
  SUBCASE("maximally mixed") {
    for (double v : hermitian_eigenvalues(0.25 * CMat4::identity())) CHECK(v == doctest::Approx(0.25));
  }
  SUBCASE("pure Bell state") {
    const auto ev = hermitian_eigenvalues(bell_diagonal({{1.0, -1.0, 1.0}}).matrix());
    CHECK(ev[0] == doctest::Approx(1.0));
    for (int i = 1; i < 4; ++i) CHECK(std::abs(ev[i]) < 1e-14);
  }
  SUBCASE("non-Hermitian input is rejected") {
    CMat4 m = CMat4::identity();
    m(0, 1) = 1e-6;
    CHECK_THROWS_AS(hermitian_eigenvalues(m), DomainError);
  }
  SUBCASE("trace and trace-of-square are reproduced for random Hermitian matrices") {
    Rng rng(11);
    for (int n = 0; n < 200; ++n) {
      const CMat4 rho = qcorr::testing::random_density(rng);
      const auto ev = hermitian_eigenvalues(rho);
      double s1 = 0.0, s2 = 0.0;
      for (double v : ev) {
        s1 += v;
        s2 += v * v;
      }
      CHECK(std::abs(s1 - rho.trace().real()) < 1e-10);
      CHECK(std::abs(s2 - (rho * rho).trace().real()) < 1e-10);
      CHECK(ev[0] >= ev[1]);
      CHECK(ev[1] >= ev[2]);
      CHECK(ev[2] >= ev[3]);
      CHECK(hermitian_eigenvalues(rho) == ev);  // deterministic
    }
  }
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(0.25 * CMat4::identity()) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(von_neumann_entropy(werner({1.0}).matrix())) < 1e-12);
  // Independent numpy oracle (tests/oracle/frozen_values.py).
  CHECK(von_neumann_entropy(bell_diagonal({{0.3, -0.4, 0.56}}).matrix()) ==
        doctest::Approx(1.6344639994508454).epsilon(1e-13));

  SUBCASE("unitary invariance") {
    Rng rng(3);
    for (int n = 0; n < 100; ++n) {
      const CMat4 rho = qcorr::testing::random_density(rng);
      const CMat4 u = qcorr::testing::random_unitary<4>(rng);
      CMat4 rotated = u * rho * u.adjoint();
      rotated = 0.5 * (rotated + rotated.adjoint());
      CHECK(std::abs(von_neumann_entropy(rotated) - von_neumann_entropy(rho)) < 1e-9);
    }
  }
}

TEST_CASE("entropy helpers") {
  CHECK(xlog2x(0.0) == 0.0);
  CHECK(xlog2x(0.5) == doctest::Approx(-0.5));
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(1.0) == 0.0);
  const std::array<double, 2> slightly_negative{-5e-11, 1.0};
  CHECK(shannon_entropy(slightly_negative) == 0.0);
  const std::array<double, 2> negative{-1e-6, 1.0};
  CHECK_THROWS_AS(shannon_entropy(negative), DomainError);
}
