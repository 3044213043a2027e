#pragma once
//
// Scenario files: JSON documents of the form
//
//   {
//     "modes": {
//       "a": {"g_re": 0.1, "g_im": 0.0, "delta": 0.0, "n": 1},
//       "b": {"g_re": 1.0, "g_im": 0.0, "delta": 0.0, "n": 0},
//       "c": {"g_re": 0.1, "g_im": 0.0, "delta": 5.0, "n": 1}
//     },
//     "gamma": {"g1": 0.0, "g2": 0.0, "g3": 0.0}
//   }
//
// "g_im" defaults to 0, "gamma" and each of its entries default to 0.
// Unknown keys, non-finite numbers, non-integer or negative photon numbers
// and negative decay rates are rejected with a SchemaError.

#include "nkerr/model.hpp"

#include <string>

namespace nkerr {

SystemConfig parse_scenario(const std::string& text);
SystemConfig load_scenario(const std::string& path);
std::string scenario_to_json(const SystemConfig& config);

}  // namespace nkerr
