#pragma once
//
// Effective Hamiltonian of the perturbed ground state,
//
//   H_eff = L n_a + S n_a^2 + K n_a n_c,
//
// with, writing G = |g_b|^2 (n_b + 1) and D = d1 d2 - G,
//
//   L = -d2 |g_a|^2 / D
//   S =  d2 (d2^2 + G) |g_a|^4 / D^3
//   K = -|g_a|^2 |g_c|^2 G / (d3 D^2)
//
// These are the fourth-order ground-state energy of the resonant manifold
// rewritten in photon numbers. Only the lossless regime is covered; loss
// enters through the susceptibilities instead.

#include "nkerr/model.hpp"

namespace nkerr {

struct KerrCoefficients {
  double linear = 0.0;      // L
  double self_kerr = 0.0;   // S
  double cross_kerr = 0.0;  // K
};

// Throws RegimeError for lossy configs and PoleError when d3 = 0 or D = 0.
KerrCoefficients coefficients(const SystemConfig& config);

// -|g_a|^2 |g_c|^2 / (d3 |g_b|^2 (n_b + 1)), valid at Raman resonance.
// Throws NotResonantError when |d2| > 1e-12 max(1, |d1|, |d3|) and PoleError
// when d3 = 0 or g_b = 0.
double pure_cross_kerr(const SystemConfig& config);

// L n_a + S n_a^2 + K n_a n_c
double effective_energy(const KerrCoefficients& k, int n_a, int n_c);

// exp(-i (L n_a + S n_a^2 + K n_a n_c) t)
cd effective_phase(const KerrCoefficients& k, int n_a, int n_c, double t);

}  // namespace nkerr
