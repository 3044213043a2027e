#include "nkerr/commands.hpp"

#include "nkerr/acceptance.hpp"
#include "nkerr/effective.hpp"
#include "nkerr/errors.hpp"
#include "nkerr/oracle.hpp"
#include "nkerr/perturb.hpp"
#include "nkerr/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nkerr {

namespace {

// Runs `body`, mapping library failures onto exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const RegimeError& e) {
    err << "refused: " << e.what() << "\n";
    return kExitRegime;
  } catch (const DegeneracyError& e) {
    err << "DegeneracyError: " << e.what() << "\n";
    return kExitDomain;
  } catch (const PoleError& e) {
    err << e.what() << "\n";
    return kExitDomain;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitSchema;
  }
}

double wrap_phase(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(x, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

bool raman_resonant(const SystemConfig& config) {
  const auto d = multi_photon_detunings(config);
  return std::abs(d.d2) <= 1e-12 * std::max({1.0, std::abs(d.d1), std::abs(d.d3)});
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string render_sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << kSweepHeader << "\n";
  for (const SweepRow& row : rows) {
    os << axis_name(row.axis) << "," << format_number(row.value);
    if (row.point) {
      const auto& p = *row.point;
      for (cd v : {p.chi1, p.chi3_self, p.chi3_cross}) {
        os << "," << format_number(v.real()) << "," << format_number(v.imag());
      }
      os << ",1\n";
    } else {
      os << ",,,,,,,0\n";
    }
  }
  return os.str();
}

int cmd_coeffs(const std::string& scenario_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SystemConfig config = load_scenario(scenario_path);
    const KerrCoefficients k = coefficients(config);
    out << "L=" << format_number(k.linear) << " S=" << format_number(k.self_kerr)
        << " K=" << format_number(k.cross_kerr) << "\n";
    if (raman_resonant(config)) {
      const double pure = pure_cross_kerr(config);
      const double rel = std::abs(pure - k.cross_kerr) / std::abs(k.cross_kerr);
      out << "raman resonance (delta_2 = 0): pure cross-Kerr K=" << format_number(pure)
          << (rel <= 1e-12 ? " agrees with the general K" : " DISAGREES with the general K")
          << "\n";
    }

    const PerturbationSplit s = split(config);
    const SeriesTable table = build_series(s, 1, 4);
    const double series = evaluate_energy(table, s.eps_a, s.eps_c, 4).real();
    const double closed = effective_energy(k, config.a.photons, config.c.photons);
    out << "ground energy to fourth order: series=" << format_number(series)
        << " L n_a + S n_a^2 + K n_a n_c=" << format_number(closed) << "\n";
    return static_cast<int>(kExitOk);
  });
}

int cmd_sweep(const std::string& scenario_path, const std::string& axis, double lo, double hi,
              int steps, const std::string& out_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto parsed = parse_axis(axis);
    if (!parsed) throw std::invalid_argument("axis must be one of da, db, dc");
    const SystemConfig config = load_scenario(scenario_path);
    config.validate();
    const std::string csv = render_sweep_csv(sweep(config, *parsed, lo, hi, steps));
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot write " + out_path);
    file << csv;
    file.close();
    if (!file) throw std::invalid_argument("failed writing " + out_path);
    out << "wrote " << steps << " rows to " << out_path << "\n";
    return static_cast<int>(kExitOk);
  });
}

int cmd_evolve(const std::string& scenario_path, double t, const std::optional<std::string>& out_path,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!std::isfinite(t)) throw std::invalid_argument("t must be finite");
    const SystemConfig config = load_scenario(scenario_path);
    if (!config.hermitian()) {
      throw RegimeError("evolution needs gamma = (0, 0, 0)");
    }
    const PerturbationSplit s = split(config);
    dressed_basis(s.h0);
    const KerrCoefficients k = coefficients(config);

    const double effective = -effective_energy(k, config.a.photons, config.c.photons) * t;
    const Vector4 psi0 = Vector4::Unit(0);
    const Vector4 psi = propagate(build_hamiltonian(config), psi0, t);
    const double oracle = std::arg(psi0.dot(psi));
    const double difference = wrap_phase(oracle - effective);
    const double eps = std::max(s.eps_a, s.eps_c);
    const double bound = 10.0 * eps * eps;

    std::ostringstream report;
    report << "t=" << format_number(t) << "\n"
           << "effective_phase=" << format_number(effective) << "\n"
           << "oracle_phase=" << format_number(oracle) << "\n"
           << "difference=" << format_number(difference) << "\n"
           << "leakage_bound=" << format_number(bound) << "\n"
           << "within_bound=" << (std::abs(difference) <= bound ? "yes" : "no") << "\n";
    out << report.str();
    if (out_path) {
      std::ofstream file(*out_path, std::ios::binary);
      if (!file) throw std::invalid_argument("cannot write " + *out_path);
      file << report.str();
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_validate(std::uint64_t seed, std::ostream& out, std::ostream& err) {
  const std::vector<CriterionResult> results = run_acceptance(seed);
  bool all = true;
  for (const auto& r : results) {
    out << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << ": " << r.detail
        << "\n";
    all = all && r.passed;
  }
  for (const auto& r : results) {
    if (!r.passed) {
      err << "first failure, criterion " << r.id << ": " << r.failure << "\n";
      break;
    }
  }
  return all ? kExitOk : kExitValidationFailed;
}

}  // namespace nkerr
