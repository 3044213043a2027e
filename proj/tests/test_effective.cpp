#include "doctest.h"
#include "helpers.hpp"

#include "nkerr/effective.hpp"
#include "nkerr/errors.hpp"
#include "nkerr/oracle.hpp"
#include "nkerr/perturb.hpp"

#include <cmath>
#include <numbers>

using namespace nkerr;
using nkerr::testing::from_deltas;
using nkerr::testing::rel;

TEST_CASE("closed-form coefficients") {
  SUBCASE("raman resonance kills L and S") {
    const auto k = coefficients(from_deltas(0.1, 1.0, 0.1, 2, 0, 3, 0.4, 0.0, 5.0));
    CHECK(k.linear == 0.0);
    CHECK(k.self_kerr == 0.0);
  }
  SUBCASE("unit couplings") {
    const auto k = coefficients(from_deltas(1.0, 1.0, 1.0, 1, 0, 1, 2.0, 1.0, 1.0));
    CHECK(k.cross_kerr == doctest::Approx(-1.0).epsilon(1e-15));
  }
  SUBCASE("pure cross-Kerr example") {
    const auto c = from_deltas(0.1, 1.0, 0.1, 1, 0, 1, 0.0, 0.0, 5.0);
    CHECK(rel(-2e-5, coefficients(c).cross_kerr) < 1e-12);
    CHECK(rel(-2e-5, pure_cross_kerr(c)) < 1e-12);
    auto c3 = c;
    c3.b.photons = 3;
    CHECK(rel(-5e-6, pure_cross_kerr(c3)) < 1e-12);
    CHECK(rel(coefficients(c3).cross_kerr, pure_cross_kerr(c3)) < 1e-12);
  }
  SUBCASE("self-Kerr carries |g_a|^4") {
    const auto c = from_deltas(0.02, 0.6, 0.01, 1, 0, 1, 0.5, 0.7, 0.9);
    const auto d = multi_photon_detunings(c);
    const double g = 0.36;
    const double den = d.d1 * d.d2 - g;
    const double expected = d.d2 * (d.d2 * d.d2 + g) * std::pow(0.02, 4) / std::pow(den, 3);
    CHECK(rel(expected, coefficients(c).self_kerr) < 1e-13);
  }
}

TEST_CASE("coefficient poles and regimes") {
  CHECK_THROWS_WITH_AS(coefficients(from_deltas(0.1, 1.0, 0.1, 1, 0, 1, 0.3, 0.1, 0.0)),
                       "pole: delta_3 = 0", PoleError);
  // delta_1 delta_2 = |g_b|^2 (n_b + 1)
  CHECK_THROWS_AS(coefficients(from_deltas(0.1, 1.0, 0.1, 1, 0, 1, 2.0, 0.5, 1.0)), PoleError);
  CHECK_THROWS_AS(coefficients(from_deltas(0.1, 1.0, 0.1, 1, 0, 1, 0.3, 0.1, 0.5, {0, 0, 0.1})),
                  RegimeError);
  CHECK_THROWS_AS(pure_cross_kerr(from_deltas(0.1, 1.0, 0.1, 1, 0, 1, 0.3, 0.1, 0.5)),
                  NotResonantError);
  CHECK_THROWS_AS(pure_cross_kerr(from_deltas(0.1, 0.0, 0.1, 1, 0, 1, 0.3, 0.0, 0.5)), PoleError);
}

TEST_CASE("coefficients match the fourth-order series") {
  const auto c = from_deltas(std::polar(0.02, 0.3), std::polar(0.7, 1.1), std::polar(0.015, -0.4), 3,
                             1, 2, -0.6, 0.45, 0.8);
  const auto k = coefficients(c);
  const auto s = split(c);
  const SeriesTable t = build_series(s, 1, 4);
  const double ea2 = s.eps_a * s.eps_a;
  const double ec2 = s.eps_c * s.eps_c;
  CHECK(rel(k.linear * 3, ea2 * t.energy(2, 0)) < 1e-12);
  CHECK(rel(k.self_kerr * 9, ea2 * ea2 * t.energy(4, 0)) < 1e-12);
  CHECK(rel(k.cross_kerr * 6, ea2 * ec2 * t.energy(2, 2)) < 1e-12);
}

TEST_CASE("effective phase") {
  const KerrCoefficients k{0.3, -0.2, 1.7};
  CHECK(effective_phase(k, 0, 5, 12.0) == cd(1.0));
  const KerrCoefficients pure{0.0, 0.0, -1.0};
  CHECK(std::abs(effective_phase(pure, 2, 3, std::numbers::pi / 6) - cd(-1.0)) < 1e-15);
  CHECK(std::abs(std::abs(effective_phase(k, 3, 2, 1e4)) - 1.0) < 1e-15);
  CHECK(effective_energy(k, 2, 1) == doctest::Approx(0.6 - 0.8 + 3.4));
}

TEST_CASE("phase evolution follows the effective hamiltonian") {
  const auto c = from_deltas(0.01, 1.0, 0.01, 1, 0, 1, 0.3, 0.2, 0.7);
  const auto k = coefficients(c);
  const double t = std::numbers::pi / 4 / std::abs(k.cross_kerr);
  const Vector4 psi0 = Vector4::Unit(0);
  const double oracle = std::arg(psi0.dot(propagate(build_hamiltonian(c), psi0, t)));
  const double diff = std::remainder(oracle + effective_energy(k, 1, 1) * t, 2 * std::numbers::pi);
  CHECK(std::abs(diff) <= 10 * 1e-4);
}
