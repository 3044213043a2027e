#pragma once
//
// Complex electrical susceptibilities of the probe transitions.
//
// Decay enters through complex detunings d_k = delta_k - i gamma_k. With
// G = |g_b|^2 (n_b + 1) and D = (gamma_1 + i delta_1)(gamma_2 + i delta_2) + G
// the closed forms are
//
//   chi1  = |g_a|^2 (i gamma_2 - delta_2) / (eps_a^2 D)
//   chi3s = 2 |g_a|^4 (i gamma_2 - delta_2) [(gamma_2 + i delta_2)^2 - G]
//           / (3 eps_a^4 D^3)
//   chi3c = |g_a|^2 |g_c|^2 G / (6 eps_a^2 eps_c^2 (delta_3 - i gamma_3) D^2)
//
// in natural units (hbar = eps_0 = 1, unit dipole matrix elements), with
// eps_a = |W_a| / 2 and eps_c = |W_c| / 2 as in the perturbation split.
//
// Bridge to the ground-state coherences. Let c_pq be the Taylor coefficient
// of eps_a^p eps_c^q in rho21 = <2|rho|1>, and c'_pq the one in
// rho43 = <4|rho|3>, where rho = |phi_R><phi_L| / <phi_L|phi_R> is built
// from the right and left perturbed ground states. Then
//
//   chi1  = -|g_a|^2 e^{-i phi_a} c_10 / eps_a^2
//   chi3s = -|g_a|^4 e^{-i phi_a} c_30 / (3 eps_a^4)
//   chi3c = -|g_a|^2 |g_c|^2 e^{-i phi_a} c_12 / (6 eps_a^2 eps_c^2)
//         = -|g_a|^2 |g_c|^2 e^{-i phi_c} c'_21 / (6 eps_a^2 eps_c^2)
//
// The last line is the c-transition cross susceptibility; it coincides with
// the a-transition one. In the lossless Raman-resonant limit the cross
// susceptibility and the cross-Kerr coefficient satisfy
// K = -6 eps_a^2 eps_c^2 chi3c.

#include "nkerr/model.hpp"
#include "nkerr/perturb.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nkerr {

struct SusceptibilityPoint {
  cd chi1{};
  cd chi3_self{};
  cd chi3_cross{};
  SystemConfig at{};
};

struct Coherences {
  cd rho21{};
  cd rho43{};
};

// Each throws PoleError naming the vanishing factor (eps_a, eps_c, D or
// delta_3 - i gamma_3).
cd chi1(const SystemConfig& config);
cd chi3_self(const SystemConfig& config);
cd chi3_cross(const SystemConfig& config);
cd chi3_cross_conjugate_transition(const SystemConfig& config);

SusceptibilityPoint susceptibility(const SystemConfig& config);

// Truncated right and left ground-state series of one configuration; the
// coherences can then be evaluated at any perturbation strengths.
class CoherenceExpansion {
 public:
  CoherenceExpansion(const SystemConfig& config, int order);

  Coherences at(double eps_a, double eps_c) const;
  Coherences at_config() const { return at(split_.eps_a, split_.eps_c); }

  const PerturbationSplit& split() const { return split_; }
  int order() const { return order_; }

 private:
  PerturbationSplit split_;
  int order_;
  SeriesTable right_;
  SeriesTable left_;
};

Coherences coherences(const SystemConfig& config, int order);

struct CoherenceTaylor {
  cd c10{};  // rho21, eps_a
  cd c30{};  // rho21, eps_a^3
  cd c12{};  // rho21, eps_a eps_c^2
};

// Susceptibilities from rho21 Taylor coefficients through the bridge above.
SusceptibilityPoint from_coherence_taylor(const SystemConfig& config, const CoherenceTaylor& c);

// Cross susceptibility of the 3-4 transition from the eps_a^2 eps_c
// coefficient of rho43.
cd chi3_cross_from_rho43(const SystemConfig& config, cd c21);

enum class SweepAxis { delta_a, delta_b, delta_c };

std::string axis_name(SweepAxis axis);              // "da", "db", "dc"
std::optional<SweepAxis> parse_axis(const std::string& name);

struct SweepRow {
  SweepAxis axis = SweepAxis::delta_a;
  double value = 0.0;
  std::optional<SusceptibilityPoint> point;  // empty at a pole
  std::string error;
};

// steps >= 2 grid points from lo to hi inclusive. Points where a closed form
// has a pole are kept as rows without a value.
std::vector<double> sweep_grid(double lo, double hi, int steps);
std::vector<SweepRow> sweep(const SystemConfig& config, SweepAxis axis, double lo, double hi,
                            int steps);

}  // namespace nkerr
