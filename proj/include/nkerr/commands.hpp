#pragma once
//
// Implementation of the `nkerr` subcommands. Each returns the process exit
// code and writes its report to `out`, diagnostics to `err`.

#include "nkerr/suscept.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nkerr {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidationFailed = 1,
  kExitSchema = 2,
  kExitDomain = 3,
  kExitRegime = 4,
};

inline constexpr const char* kSweepHeader =
    "axis,value,chi1_re,chi1_im,chi3s_re,chi3s_im,chi3c_re,chi3c_im,valid";

// 17 significant digits; zero of either sign prints as "0".
std::string format_number(double x);

std::string render_sweep_csv(const std::vector<SweepRow>& rows);

int cmd_coeffs(const std::string& scenario_path, std::ostream& out, std::ostream& err);

int cmd_sweep(const std::string& scenario_path, const std::string& axis, double lo, double hi,
              int steps, const std::string& out_path, std::ostream& out, std::ostream& err);

int cmd_evolve(const std::string& scenario_path, double t, const std::optional<std::string>& out_path,
               std::ostream& out, std::ostream& err);

int cmd_validate(std::uint64_t seed, std::ostream& out, std::ostream& err);

}  // namespace nkerr
