#include "nkerr/model.hpp"

#include "nkerr/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nkerr {

namespace {

void check_mode(const FieldMode& mode, const char* name) {
  if (mode.photons < 0) {
    throw std::invalid_argument(std::string("negative photon number in mode ") + name);
  }
  if (!std::isfinite(mode.coupling.real()) || !std::isfinite(mode.coupling.imag()) ||
      !std::isfinite(mode.detuning)) {
    throw std::invalid_argument(std::string("non-finite parameter in mode ") + name);
  }
}

void check_rate(double g, const char* name) {
  if (!std::isfinite(g) || g < 0.0) {
    throw std::invalid_argument(std::string("decay rate ") + name + " must be finite and >= 0");
  }
}

}  // namespace

void SystemConfig::validate() const {
  check_mode(a, "a");
  check_mode(b, "b");
  check_mode(c, "c");
  check_rate(gamma.g1, "gamma_1");
  check_rate(gamma.g2, "gamma_2");
  check_rate(gamma.g3, "gamma_3");
}

MultiPhotonDetunings multi_photon_detunings(double delta_a, double delta_b, double delta_c) {
  const double d2 = delta_a - delta_b;
  return {delta_a, d2, d2 + delta_c};
}

MultiPhotonDetunings multi_photon_detunings(const SystemConfig& config) {
  return multi_photon_detunings(config.a.detuning, config.b.detuning, config.c.detuning);
}

cd rabi_frequency(const FieldMode& mode) {
  if (mode.photons < 0) {
    throw std::invalid_argument("photon number must be >= 0");
  }
  const int quanta = mode.label == ModeLabel::b ? mode.photons + 1 : mode.photons;
  return 2.0 * mode.coupling * std::sqrt(static_cast<double>(quanta));
}

double pump_strength(const SystemConfig& config) {
  return std::norm(config.b.coupling) * (config.b.photons + 1.0);
}

std::array<cd, 4> complex_detunings(const SystemConfig& config) {
  const auto d = multi_photon_detunings(config);
  return {cd{0.0, 0.0}, cd{d.d1, -config.gamma.g1}, cd{d.d2, -config.gamma.g2},
          cd{d.d3, -config.gamma.g3}};
}

Hamiltonian4 build_hamiltonian(const SystemConfig& config) {
  config.validate();
  const cd wa = rabi_frequency(config.a);
  const cd wb = rabi_frequency(config.b);
  const cd wc = rabi_frequency(config.c);
  const auto diag = complex_detunings(config);

  Hamiltonian4 h = Matrix4::Zero();
  for (int i = 0; i < 4; ++i) h(i, i) = diag[i];
  h(0, 1) = std::conj(wa) / 2.0;
  h(1, 0) = wa / 2.0;
  h(1, 2) = wb / 2.0;
  h(2, 1) = std::conj(wb) / 2.0;
  h(2, 3) = std::conj(wc) / 2.0;
  h(3, 2) = wc / 2.0;
  return h;
}

PerturbationSplit split(const SystemConfig& config) {
  const Hamiltonian4 h = build_hamiltonian(config);
  const cd wa = rabi_frequency(config.a);
  const cd wc = rabi_frequency(config.c);

  PerturbationSplit s;
  s.eps_a = std::abs(wa) / 2.0;
  s.eps_c = std::abs(wc) / 2.0;
  s.phi_a = std::arg(wa);
  s.phi_c = std::arg(wc);

  s.h0 = h;
  s.h0(0, 1) = s.h0(1, 0) = 0.0;
  s.h0(2, 3) = s.h0(3, 2) = 0.0;

  s.va(0, 1) = std::polar(1.0, -s.phi_a);
  s.va(1, 0) = std::polar(1.0, s.phi_a);
  s.vc(2, 3) = std::polar(1.0, -s.phi_c);
  s.vc(3, 2) = std::polar(1.0, s.phi_c);
  return s;
}

PerturbationSplit PerturbationSplit::transposed() const {
  PerturbationSplit t = *this;
  t.h0 = h0.transpose();
  t.va = va.transpose();
  t.vc = vc.transpose();
  t.phi_a = -phi_a;
  t.phi_c = -phi_c;
  return t;
}

bool PerturbationSplit::hermitian() const {
  return hermiticity_defect(h0) == 0.0 && hermiticity_defect(va) == 0.0 &&
         hermiticity_defect(vc) == 0.0;
}

std::array<ManifoldIndex, 4> manifold_members(const ManifoldIndex& seed) {
  if (seed.level != 1) {
    throw ManifoldError("manifold seed must be atomic level 1");
  }
  if (seed.n_b < 0) {
    throw ManifoldError("n_b < 0");
  }
  if (seed.n_a <= 0) {
    throw ManifoldError("n_a = 0: the manifold needs at least one a-photon");
  }
  if (seed.n_c <= 0) {
    throw ManifoldError("n_c = 0: the manifold needs at least one c-photon");
  }
  const int na = seed.n_a;
  const int nb = seed.n_b;
  const int nc = seed.n_c;
  return {ManifoldIndex{1, na, nb, nc}, ManifoldIndex{2, na - 1, nb, nc},
          ManifoldIndex{3, na - 1, nb + 1, nc}, ManifoldIndex{4, na - 1, nb + 1, nc - 1}};
}

double hermiticity_defect(const Matrix4& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace nkerr
