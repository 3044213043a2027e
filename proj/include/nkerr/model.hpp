#pragma once
//
// N-configuration four-level atom on a single resonant manifold.
//
// Levels 1..4 are coupled by field a (1-2), the pump b (2-3) and field c
// (3-4). Inside the manifold spanned by
//
//   |1, n_a, n_b, n_c>, |2, n_a-1, n_b, n_c>,
//   |3, n_a-1, n_b+1, n_c>, |4, n_a-1, n_b+1, n_c-1>
//
// the interaction-picture Hamiltonian is the 4x4 matrix
//
//   [ 0        W_a^*/2  0        0       ]
//   [ W_a/2    d1       W_b/2    0       ]
//   [ 0        W_b^*/2  d2       W_c^*/2 ]
//   [ 0        0        W_c/2    d3      ]
//
// with Rabi frequencies W_a = 2 g_a sqrt(n_a), W_b = 2 g_b sqrt(n_b + 1),
// W_c = 2 g_c sqrt(n_c) and d_k = delta_k - i gamma_k.
//
// Units: hbar = 1, all frequencies angular. Atomic levels are numbered
// 1..4 in the public API and stored at matrix rows/columns 0..3.

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace nkerr {

using cd = std::complex<double>;
using Matrix4 = Eigen::Matrix4cd;
using Vector4 = Eigen::Vector4cd;
using Hamiltonian4 = Matrix4;

enum class ModeLabel { a, b, c };

struct FieldMode {
  ModeLabel label = ModeLabel::a;
  cd coupling{0.0, 0.0};  // g, carries its phase
  double detuning = 0.0;  // single-photon detuning Delta
  int photons = 0;        // Fock number n
};

// Decay rates entering the diagonal as delta_k - i gamma_k.
struct DecayRates {
  double g1 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;

  bool lossless() const { return g1 == 0.0 && g2 == 0.0 && g3 == 0.0; }
};

struct SystemConfig {
  FieldMode a{ModeLabel::a};
  FieldMode b{ModeLabel::b};
  FieldMode c{ModeLabel::c};
  DecayRates gamma;

  // Throws std::invalid_argument on negative photon numbers, negative or
  // non-finite decay rates, or non-finite couplings/detunings.
  void validate() const;

  bool hermitian() const { return gamma.lossless(); }
};

struct MultiPhotonDetunings {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

struct ManifoldIndex {
  int level = 1;
  int n_a = 0;
  int n_b = 0;
  int n_c = 0;

  friend bool operator==(const ManifoldIndex&, const ManifoldIndex&) = default;
};

// H = H0 + eps_a Va + eps_c Vc with unit-modulus Va, Vc.
struct PerturbationSplit {
  Hamiltonian4 h0 = Matrix4::Zero();
  Matrix4 va = Matrix4::Zero();
  Matrix4 vc = Matrix4::Zero();
  double eps_a = 0.0;
  double eps_c = 0.0;
  double phi_a = 0.0;
  double phi_c = 0.0;

  // H0 + ea Va + ec Vc for arbitrary perturbation strengths.
  Hamiltonian4 at(double ea, double ec) const { return h0 + ea * va + ec * vc; }
  Hamiltonian4 hamiltonian() const { return at(eps_a, eps_c); }

  // Split of H^T. Its right eigenvectors are the left eigenvectors of H.
  PerturbationSplit transposed() const;

  bool hermitian() const;
};

MultiPhotonDetunings multi_photon_detunings(double delta_a, double delta_b, double delta_c);
MultiPhotonDetunings multi_photon_detunings(const SystemConfig& config);

// 2 g sqrt(n) for modes a and c, 2 g sqrt(n + 1) for the pump b.
cd rabi_frequency(const FieldMode& mode);

// |g_b|^2 (n_b + 1) = |W_b|^2 / 4, the pump strength appearing in every
// closed form.
double pump_strength(const SystemConfig& config);

// Diagonal entries 0, d1 - i g1, d2 - i g2, d3 - i g3.
std::array<cd, 4> complex_detunings(const SystemConfig& config);

Hamiltonian4 build_hamiltonian(const SystemConfig& config);

PerturbationSplit split(const SystemConfig& config);

// The four members of the resonant manifold seeded by |1, n_a, n_b, n_c>.
// Throws ManifoldError when n_a = 0 or n_c = 0.
std::array<ManifoldIndex, 4> manifold_members(const ManifoldIndex& seed);

// Largest |H_ij - conj(H_ji)|.
double hermiticity_defect(const Matrix4& m);

}  // namespace nkerr
