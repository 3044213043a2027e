#pragma once
//
// The acceptance criteria as executable checks. Fixed configurations plus
// seeded random batches; identical seeds give identical reports.

#include "nkerr/model.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace nkerr {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = true;
  std::string detail;   // summary of what was measured
  std::string failure;  // first failing comparison: expected, actual, tolerance
};

// g_a = g_c = 0.01, g_b = 1, n = (1, 0, 1), Delta = (0.3, 0.1, 0.5), lossless.
SystemConfig reference_config();

enum class Regime {
  lossless,         // generic Hermitian configurations
  raman_resonant,   // Hermitian with delta_2 = 0
  lossy,            // random decay rates
};

// Weak-probe configurations with random coupling phases whose unperturbed
// spectrum and closed-form denominators stay well away from zero.
SystemConfig random_config(std::mt19937_64& rng, Regime regime);

// The rejected self-Kerr variant with |g_b|^4 in place of |g_a|^4.
double literal_self_kerr(const SystemConfig& config);

std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

}  // namespace nkerr
