#pragma once
//
// Independent ground truth for the series and closed forms: dense 4x4
// eigensolutions, continuity tracking of the ground state, exact time
// propagation and finite-difference Taylor extraction.

#include "nkerr/model.hpp"

#include <array>
#include <functional>

namespace nkerr {

struct EigenSolution {
  // Sorted by ascending real part, then ascending imaginary part.
  std::array<cd, 4> values{};
  Matrix4 vectors = Matrix4::Identity();  // unit-norm columns
  std::array<double, 4> residuals{};      // ||H v - lambda v||
};

// All eigenpairs of a dense complex 4x4 matrix. Hermitian input gives real
// eigenvalues and an orthonormal basis. Throws ConvergenceError when a
// residual exceeds 1e-12 max(1, ||H||) after refinement.
EigenSolution exact_eigensystem(const Matrix4& h);

// Number of uniform steps on the continuity path of track_ground.
inline constexpr int kTrackingSteps = 32;

// Eigenvalue of H0 + s (eps_a Va + eps_c Vc) at s = eps_scale that connects
// continuously to bare level 1 at s = 0. Throws TrackingError when level 1
// is degenerate at s = 0 or the best overlap along the path drops below 0.5.
cd track_ground(const PerturbationSplit& split, double eps_scale);
cd track_ground(const SystemConfig& config, double eps_scale);

// Ground eigenvalue of H0 + ea Va + ec Vc, tracked from (0, 0).
cd ground_energy_at(const PerturbationSplit& split, double ea, double ec);

// exp(-i H t) psi0 through the eigendecomposition of H.
Vector4 propagate(const Matrix4& h, const Vector4& psi0, double t);

using Evaluator = std::function<cd(double eps_a, double eps_c)>;

struct FdOptions {
  double step = 1e-2;
  // Relative tolerance of the Richardson consistency check; a StepError is
  // raised when the two levels differ by more than 10 tol (|estimate| + atol).
  double tol = 1e-3;
  double atol = 1e-10;
};

// h = 1e-2 max(|d1|, |d2|, |d3|, |W_b|, 1)
double default_fd_step(const SystemConfig& config);

// (1 / p! q!) d^{p+q} f / d eps_a^p d eps_c^q at (0, 0), from tensor central
// differences at steps h and h/2 combined by one Richardson level.
cd fd_extract(const Evaluator& f, int p, int q, const FdOptions& options = {});

}  // namespace nkerr
