#include "nkerr/effective.hpp"

#include "nkerr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nkerr {

namespace {

constexpr double kPoleTol = 1e-12;

void require_lossless(const SystemConfig& config) {
  if (!config.hermitian()) {
    throw RegimeError("Kerr coefficients need gamma = (0, 0, 0); use the susceptibilities for "
                      "lossy configurations");
  }
}

}  // namespace

KerrCoefficients coefficients(const SystemConfig& config) {
  config.validate();
  require_lossless(config);
  const auto d = multi_photon_detunings(config);
  const double pump = pump_strength(config);
  const double den = d.d1 * d.d2 - pump;

  if (std::abs(d.d3) <= kPoleTol * std::max(1.0, std::abs(d.d1))) {
    throw PoleError("pole: delta_3 = 0");
  }
  if (std::abs(den) <= kPoleTol * std::max({1.0, std::abs(d.d1 * d.d2), pump})) {
    throw PoleError("pole: delta_1 delta_2 - |g_b|^2 (n_b + 1) = 0");
  }

  const double ga2 = std::norm(config.a.coupling);
  const double gc2 = std::norm(config.c.coupling);
  KerrCoefficients k;
  k.linear = -d.d2 * ga2 / den;
  k.self_kerr = d.d2 * (d.d2 * d.d2 + pump) * ga2 * ga2 / (den * den * den);
  k.cross_kerr = -ga2 * gc2 * pump / (d.d3 * den * den);
  return k;
}

double pure_cross_kerr(const SystemConfig& config) {
  config.validate();
  require_lossless(config);
  const auto d = multi_photon_detunings(config);
  if (std::abs(d.d2) > kPoleTol * std::max({1.0, std::abs(d.d1), std::abs(d.d3)})) {
    throw NotResonantError("pure cross-Kerr form needs delta_2 = 0");
  }
  if (std::abs(d.d3) <= kPoleTol * std::max(1.0, std::abs(d.d1))) {
    throw PoleError("pole: delta_3 = 0");
  }
  const double pump = pump_strength(config);
  if (pump == 0.0) throw PoleError("pole: g_b = 0");
  return -std::norm(config.a.coupling) * std::norm(config.c.coupling) / (d.d3 * pump);
}

double effective_energy(const KerrCoefficients& k, int n_a, int n_c) {
  if (n_a < 0 || n_c < 0) throw std::invalid_argument("photon numbers must be >= 0");
  const double na = n_a;
  const double nc = n_c;
  return k.linear * na + k.self_kerr * na * na + k.cross_kerr * na * nc;
}

cd effective_phase(const KerrCoefficients& k, int n_a, int n_c, double t) {
  return std::polar(1.0, -effective_energy(k, n_a, n_c) * t);
}

}  // namespace nkerr
