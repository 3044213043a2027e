#include "doctest.h"
#include "helpers.hpp"

#include "nkerr/errors.hpp"
#include "nkerr/oracle.hpp"
#include "nkerr/perturb.hpp"

#include <cmath>
#include <random>

using namespace nkerr;
using nkerr::testing::from_deltas;
using nkerr::testing::rel;

TEST_CASE("exact eigensystem") {
  const auto zero = exact_eigensystem(Matrix4::Zero());
  for (cd v : zero.values) CHECK(v == cd(0.0));

  Matrix4 d = Matrix4::Zero();
  d(1, 1) = 0.7;
  d(2, 2) = -0.3;
  d(3, 3) = 1.9;
  const auto diag = exact_eigensystem(d);
  CHECK(diag.values[0] == cd(-0.3));
  CHECK(diag.values[1] == cd(0.0));
  CHECK(diag.values[3] == cd(1.9));

  // reconstruction, hermitian and not
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 10; ++trial) {
    Matrix4 h;
    for (int i = 0; i < 16; ++i) h(i) = cd(n(rng), n(rng));
    if (trial % 2 == 0) h = (h + h.adjoint()).eval();
    const auto sol = exact_eigensystem(h);
    for (int k = 0; k < 4; ++k) {
      CHECK(sol.residuals[k] < 1e-12);
      CHECK(std::abs(sol.vectors.col(k).norm() - 1.0) < 1e-13);
    }
  }
}

TEST_CASE("ground-state tracking") {
  const auto s = split(from_deltas(0.01, 1.0, 0.01, 1, 0, 1, 0.3, 0.2, 0.7));
  CHECK(track_ground(s, 0.0) == cd(0.0));
  CHECK(track_ground(s, 1.0) == track_ground(s, 1.0));
  // big couplings near a crossing cannot be followed
  const auto bad = from_deltas(1.5, 1.0, 1.5, 1, 0, 1, 0.3, 0.2, 1e-9);
  CHECK_THROWS_AS(track_ground(bad, 1.0), Error);
}

TEST_CASE("propagation") {
  const auto c = from_deltas(0.2, 0.8, 0.1, 1, 0, 1, 0.3, 0.2, 0.7);
  const Matrix4 h = build_hamiltonian(c);
  const Vector4 psi0 = Vector4(cd(0.6), cd(0.0, 0.8), cd(0.0), cd(0.0));
  CHECK((propagate(h, psi0, 0.0) - psi0).norm() == 0.0);

  Matrix4 d = Matrix4::Zero();
  d(1, 1) = 0.5;
  d(3, 3) = -2.0;
  const Vector4 ones = Vector4::Ones();
  const Vector4 out = propagate(d, ones, 3.0);
  CHECK(std::abs(out(1) - std::polar(1.0, -1.5)) < 1e-14);
  CHECK(std::abs(out(3) - std::polar(1.0, 6.0)) < 1e-14);

  // group property and unitarity
  const Vector4 two_steps = propagate(h, propagate(h, psi0, 1.3), 2.1);
  CHECK((two_steps - propagate(h, psi0, 3.4)).norm() < 1e-12);
  CHECK(std::abs(propagate(h, psi0, 50.0).norm() - 1.0) < 1e-12);

  // decay only shrinks the norm
  const Matrix4 lossy = build_hamiltonian(
      from_deltas(0.2, 0.8, 0.1, 1, 0, 1, 0.3, 0.2, 0.7, {0.1, 0.1, 0.1}));
  CHECK(propagate(lossy, Vector4::Unit(1), 5.0).norm() < 1.0);
}

TEST_CASE("finite differences") {
  const Evaluator constant = [](double, double) { return cd(2.5); };
  CHECK(std::abs(fd_extract(constant, 2, 1)) < 1e-10);
  CHECK(std::abs(fd_extract(constant, 0, 0) - 2.5) < 1e-15);

  const Evaluator mono = [](double a, double c) { return cd(a * a * c * c); };
  CHECK(std::abs(fd_extract(mono, 2, 2) - 1.0) < 1e-8);

  const Evaluator poly = [](double a, double c) { return cd(1 + 3 * a - 2 * a * a * a + 5 * a * c * c, a * c); };
  CHECK(std::abs(fd_extract(poly, 3, 0) - cd(-2.0)) < 1e-8);
  CHECK(std::abs(fd_extract(poly, 1, 2) - cd(5.0)) < 1e-8);
  CHECK(std::abs(fd_extract(poly, 1, 1) - cd(0.0, 1.0)) < 1e-8);

  CHECK_THROWS_AS(fd_extract(mono, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(fd_extract(mono, 1, 1, {0.0}), std::invalid_argument);

  // a step comparable to the radius of convergence is rejected
  const Evaluator pole = [](double a, double) { return cd(1.0 / (1.0 - a / 0.05)); };
  CHECK_THROWS_AS(fd_extract(pole, 4, 0, {0.02}), StepError);
}

TEST_CASE("finite differences recover E^(2,2)") {
  const auto c = from_deltas(std::polar(0.02, 0.5), 1.0, std::polar(0.02, -1.0), 1, 0, 1, 0.3, 0.1, 0.5);
  const auto s = split(c);
  const SeriesTable t = build_series(s, 1, 4);
  const Evaluator ground = [&s](double a, double b) { return ground_energy_at(s, a, b); };
  FdOptions o;
  o.step = default_fd_step(c);
  CHECK(o.step == doctest::Approx(0.02));
  CHECK(rel(t.energy(2, 2), fd_extract(ground, 2, 2, o)) < 1e-5);
  CHECK(rel(t.energy(2, 0), fd_extract(ground, 2, 0, o)) < 1e-5);
  CHECK(rel(t.energy(4, 0), fd_extract(ground, 4, 0, o)) < 1e-5);
}
