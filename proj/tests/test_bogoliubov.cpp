#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "braggsim/bogoliubov.hpp"

using namespace braggsim;

TEST_CASE("free-particle limit: u -> 1, v -> 0, f -> 1") {
  const BogoliubovMode mode = dispersion({1e8});
  CHECK(mode.u_q == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(std::abs(mode.v_q) < 1e-4);
  CHECK(mode.f_q == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("x = 1 reference values") {
  const BogoliubovMode mode = dispersion({1.0});
  CHECK(mode.omega_b_over_mu == doctest::Approx(1.732051).epsilon(1e-6));
  CHECK(mode.v_q * mode.v_q == doctest::Approx(0.077350).epsilon(1e-4));
  CHECK(mode.u_q == doctest::Approx(1.037955).epsilon(1e-6));
  CHECK(mode.f_q == doctest::Approx(0.759836).epsilon(1e-6));
}

TEST_CASE("mode-function identities over a log grid") {
  double previous_omega = 0.0;
  for (int k = 0; k <= 120; ++k) {
    const double x = std::pow(10.0, -3.0 + 6.0 * k / 120.0);
    const BogoliubovMode mode = dispersion({x});
    CHECK(mode.u_q * mode.u_q - mode.v_q * mode.v_q == doctest::Approx(1.0).epsilon(1e-12));
    // (u - v)^2 = omega_q / omega_B, i.e. f^2 * omega_B/mu = x
    CHECK(mode.f_q * mode.f_q * mode.omega_b_over_mu == doctest::Approx(x).epsilon(1e-12));
    CHECK(mode.omega_b_over_mu > previous_omega);
    previous_omega = mode.omega_b_over_mu;
  }
}

TEST_CASE("dispersion rejects non-positive x") {
  CHECK_THROWS_AS(dispersion({0.0}), std::domain_error);
  CHECK_THROWS_AS(dispersion({-2.0}), std::domain_error);
}

TEST_CASE("eta_from_physical") {
  BogoliubovMode unit;
  unit.f_q = 1.0;
  CHECK(eta_from_physical(1, 0.37, unit) == doctest::Approx(0.37));
  CHECK(eta_from_physical(4, 0.0, unit) == 0.0);

  const BogoliubovMode mode = dispersion({1.0});
  const double eta = eta_from_physical(100, 0.5, mode);
  CHECK(eta == doctest::Approx(10.0 * 0.5 * mode.f_q).epsilon(1e-12));
  CHECK(eta == doctest::Approx(3.799180).epsilon(1e-5));

  CHECK_THROWS_AS(eta_from_physical(0, 1.0, unit), std::domain_error);
}
