#include "nkerr/suscept.hpp"

#include "nkerr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nkerr {

namespace {

constexpr double kPoleTol = 1e-12;

struct Factors {
  double ga2 = 0.0;
  double gc2 = 0.0;
  double pump = 0.0;
  double eps_a = 0.0;
  double eps_c = 0.0;
  cd probe{};   // gamma_1 + i delta_1
  cd raman{};   // gamma_2 + i delta_2
  cd d3{};      // delta_3 - i gamma_3
  cd den{};     // D
};

Factors factors(const SystemConfig& config) {
  config.validate();
  const auto d = multi_photon_detunings(config);
  Factors f;
  f.ga2 = std::norm(config.a.coupling);
  f.gc2 = std::norm(config.c.coupling);
  f.pump = pump_strength(config);
  f.eps_a = std::abs(rabi_frequency(config.a)) / 2.0;
  f.eps_c = std::abs(rabi_frequency(config.c)) / 2.0;
  f.probe = cd(config.gamma.g1, d.d1);
  f.raman = cd(config.gamma.g2, d.d2);
  f.d3 = cd(d.d3, -config.gamma.g3);
  const cd product = f.probe * f.raman;
  f.den = product + f.pump;
  if (f.eps_a == 0.0) throw PoleError("pole: eps_a = 0 (no a-photons or g_a = 0)");
  if (std::abs(f.den) <= kPoleTol * std::max({1.0, std::abs(product), f.pump})) {
    throw PoleError("pole: (gamma_1 + i delta_1)(gamma_2 + i delta_2) + |g_b|^2 (n_b + 1) = 0");
  }
  return f;
}

void require_cross(const Factors& f) {
  if (f.eps_c == 0.0) throw PoleError("pole: eps_c = 0 (no c-photons or g_c = 0)");
  if (std::abs(f.d3) <= kPoleTol) throw PoleError("pole: delta_3 - i gamma_3 = 0");
}

cd dark_factor(const SystemConfig& config) {
  const auto d = multi_photon_detunings(config);
  return cd(-d.d2, config.gamma.g2);  // i gamma_2 - delta_2
}

}  // namespace

cd chi1(const SystemConfig& config) {
  const Factors f = factors(config);
  return f.ga2 * dark_factor(config) / (f.eps_a * f.eps_a * f.den);
}

cd chi3_self(const SystemConfig& config) {
  const Factors f = factors(config);
  const cd bracket = f.raman * f.raman - f.pump;
  const double ea4 = f.eps_a * f.eps_a * f.eps_a * f.eps_a;
  return 2.0 * f.ga2 * f.ga2 * dark_factor(config) * bracket / (3.0 * ea4 * f.den * f.den * f.den);
}

cd chi3_cross(const SystemConfig& config) {
  const Factors f = factors(config);
  require_cross(f);
  const double eps2 = f.eps_a * f.eps_a * f.eps_c * f.eps_c;
  return f.ga2 * f.pump * f.gc2 / (6.0 * eps2 * f.d3 * f.den * f.den);
}

cd chi3_cross_conjugate_transition(const SystemConfig& config) { return chi3_cross(config); }

SusceptibilityPoint susceptibility(const SystemConfig& config) {
  SusceptibilityPoint point;
  point.chi1 = chi1(config);
  point.chi3_self = chi3_self(config);
  point.chi3_cross = chi3_cross(config);
  point.at = config;
  return point;
}

CoherenceExpansion::CoherenceExpansion(const SystemConfig& config, int order)
    : split_(nkerr::split(config)),
      order_(order),
      right_(build_series(split_, 1, std::max(order, 0))),
      left_(build_series(split_.transposed(), 1, std::max(order, 0))) {
  if (order < 0) throw std::invalid_argument("coherence order must be >= 0");
}

Coherences CoherenceExpansion::at(double eps_a, double eps_c) const {
  const Vector4 x = evaluate_state(right_, eps_a, eps_c, order_);
  const Vector4 y = evaluate_state(left_, eps_a, eps_c, order_);
  const cd norm = x.cwiseProduct(y).sum();
  return {x(1) * y(0) / norm, x(3) * y(2) / norm};
}

Coherences coherences(const SystemConfig& config, int order) {
  return CoherenceExpansion(config, order).at_config();
}

SusceptibilityPoint from_coherence_taylor(const SystemConfig& config, const CoherenceTaylor& c) {
  const Factors f = factors(config);
  require_cross(f);
  const PerturbationSplit s = nkerr::split(config);
  const cd phase = std::polar(1.0, -s.phi_a);
  const double ea2 = f.eps_a * f.eps_a;
  const double ec2 = f.eps_c * f.eps_c;
  SusceptibilityPoint point;
  point.chi1 = -f.ga2 * phase * c.c10 / ea2;
  point.chi3_self = -f.ga2 * f.ga2 * phase * c.c30 / (3.0 * ea2 * ea2);
  point.chi3_cross = -f.ga2 * f.gc2 * phase * c.c12 / (6.0 * ea2 * ec2);
  point.at = config;
  return point;
}

cd chi3_cross_from_rho43(const SystemConfig& config, cd c21) {
  const Factors f = factors(config);
  require_cross(f);
  const PerturbationSplit s = nkerr::split(config);
  return -f.ga2 * f.gc2 * std::polar(1.0, -s.phi_c) * c21 /
         (6.0 * f.eps_a * f.eps_a * f.eps_c * f.eps_c);
}

std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::delta_a: return "da";
    case SweepAxis::delta_b: return "db";
    case SweepAxis::delta_c: return "dc";
  }
  return "?";
}

std::optional<SweepAxis> parse_axis(const std::string& name) {
  if (name == "da") return SweepAxis::delta_a;
  if (name == "db") return SweepAxis::delta_b;
  if (name == "dc") return SweepAxis::delta_c;
  return std::nullopt;
}

std::vector<double> sweep_grid(double lo, double hi, int steps) {
  if (steps < 2) throw std::invalid_argument("a sweep needs at least 2 steps");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw std::invalid_argument("non-finite sweep bounds");
  const int intervals = steps - 1;
  std::vector<double> grid(static_cast<std::size_t>(steps));
  // Written so that a range symmetric about zero gives an exactly
  // antisymmetric grid.
  for (int i = 0; i < steps; ++i) {
    grid[i] = (lo * (intervals - i) + hi * i) / intervals;
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<SweepRow> sweep(const SystemConfig& config, SweepAxis axis, double lo, double hi,
                            int steps) {
  std::vector<SweepRow> rows;
  for (double value : sweep_grid(lo, hi, steps)) {
    SystemConfig point = config;
    switch (axis) {
      case SweepAxis::delta_a: point.a.detuning = value; break;
      case SweepAxis::delta_b: point.b.detuning = value; break;
      case SweepAxis::delta_c: point.c.detuning = value; break;
    }
    SweepRow row;
    row.axis = axis;
    row.value = value;
    try {
      row.point = susceptibility(point);
    } catch (const PoleError& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace nkerr
