// nkerr: cross-Kerr coefficients, susceptibility sweeps, evolution checks
// and the validation suite for the N-configuration four-level atom.

#include "nkerr/commands.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Effective cross-Kerr interaction of an N-configuration four-level atom"};
  app.require_subcommand(1);

  std::string scenario;
  auto* coeffs = app.add_subcommand("coeffs", "print L, S and K for a lossless scenario");
  coeffs->add_option("scenario", scenario, "scenario JSON file")->required();

  std::string axis;
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
  std::string out_path;
  auto* sweep = app.add_subcommand("sweep", "tabulate susceptibilities along a detuning axis");
  sweep->add_option("scenario", scenario, "scenario JSON file")->required();
  sweep->add_option("--axis", axis, "detuning to vary: da, db or dc")
      ->required()
      ->check(CLI::IsMember({"da", "db", "dc"}));
  sweep->add_option("--lo", lo, "first grid value")->required();
  sweep->add_option("--hi", hi, "last grid value")->required();
  sweep->add_option("--steps", steps, "number of grid points (>= 2)")->required();
  sweep->add_option("--out", out_path, "CSV output file")->required();

  double t = 0.0;
  std::string evolve_out;
  auto* evolve = app.add_subcommand("evolve", "compare effective and exact ground-state phases");
  evolve->add_option("scenario", scenario, "scenario JSON file")->required();
  evolve->add_option("--t", t, "evolution time")->required();
  evolve->add_option("--out", evolve_out, "also write the report to this file");

  std::uint64_t seed = 0;
  auto* validate = app.add_subcommand("validate", "run the acceptance checks");
  validate->add_option("--seed", seed, "seed of the random configuration batches");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : nkerr::kExitSchema;
  }

  if (*coeffs) return nkerr::cmd_coeffs(scenario, std::cout, std::cerr);
  if (*sweep) return nkerr::cmd_sweep(scenario, axis, lo, hi, steps, out_path, std::cout, std::cerr);
  if (*evolve) {
    const std::optional<std::string> out =
        evolve_out.empty() ? std::nullopt : std::optional<std::string>(evolve_out);
    return nkerr::cmd_evolve(scenario, t, out, std::cout, std::cerr);
  }
  if (*validate) return nkerr::cmd_validate(seed, std::cout, std::cerr);
  return nkerr::kExitSchema;
}
