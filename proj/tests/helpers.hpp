#pragma once

#include "nkerr/model.hpp"

#include <complex>

namespace nkerr::testing {

inline SystemConfig make_config(cd ga, cd gb, cd gc, int na, int nb, int nc, double da, double db,
                                double dc, DecayRates gamma = {}) {
  SystemConfig c;
  c.a = {ModeLabel::a, ga, da, na};
  c.b = {ModeLabel::b, gb, db, nb};
  c.c = {ModeLabel::c, gc, dc, nc};
  c.gamma = gamma;
  return c;
}

// Builds a config from multi-photon detunings instead of single-photon ones.
inline SystemConfig from_deltas(cd ga, cd gb, cd gc, int na, int nb, int nc, double d1, double d2,
                                double d3, DecayRates gamma = {}) {
  return make_config(ga, gb, gc, na, nb, nc, d1, d1 - d2, d3 - d2, gamma);
}

inline double rel(cd expected, cd actual) { return std::abs(actual - expected) / std::abs(expected); }

}  // namespace nkerr::testing
