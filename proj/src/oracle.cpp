#include "nkerr/oracle.hpp"

#include "nkerr/errors.hpp"
#include "nkerr/perturb.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace nkerr {

namespace {

constexpr double kResidualTol = 1e-12;
constexpr int kRefinementSweeps = 3;

double residual(const Matrix4& h, cd lambda, const Vector4& v) {
  return (h * v - lambda * v).norm();
}

// Inverse iteration with a shift just off lambda, followed by a Rayleigh
// quotient update.
void refine(const Matrix4& h, cd& lambda, Vector4& v) {
  const double scale = std::max(1.0, h.norm());
  for (int sweep = 0; sweep < kRefinementSweeps; ++sweep) {
    const cd shift = lambda + cd(1e-13 * scale, 0.0);
    const Eigen::FullPivLU<Matrix4> lu(h - shift * Matrix4::Identity());
    Vector4 next = lu.solve(v);
    if (!next.allFinite() || next.norm() == 0.0) return;
    next.normalize();
    v = next;
    lambda = v.dot(h * v);
    if (residual(h, lambda, v) <= kResidualTol * scale) return;
  }
}

bool ordered(cd x, cd y) {
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

}  // namespace

EigenSolution exact_eigensystem(const Matrix4& h) {
  if (!h.allFinite()) throw ConvergenceError("non-finite matrix entries");
  std::array<cd, 4> values{};
  Matrix4 vectors;
  if (hermiticity_defect(h) == 0.0) {
    Eigen::SelfAdjointEigenSolver<Matrix4> solver(h);
    if (solver.info() != Eigen::Success) throw ConvergenceError("Hermitian eigensolver failed");
    for (int k = 0; k < 4; ++k) values[k] = cd(solver.eigenvalues()(k), 0.0);
    vectors = solver.eigenvectors();
  } else {
    Eigen::ComplexEigenSolver<Matrix4> solver(h);
    if (solver.info() != Eigen::Success) throw ConvergenceError("complex eigensolver failed");
    for (int k = 0; k < 4; ++k) values[k] = solver.eigenvalues()(k);
    vectors = solver.eigenvectors();
    for (int k = 0; k < 4; ++k) vectors.col(k).normalize();
  }

  std::array<int, 4> order{};
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return ordered(values[i], values[j]); });

  EigenSolution out;
  const double scale = std::max(1.0, h.norm());
  for (int k = 0; k < 4; ++k) {
    cd lambda = values[order[k]];
    Vector4 v = vectors.col(order[k]);
    double r = residual(h, lambda, v);
    if (r > kResidualTol * scale) {
      refine(h, lambda, v);
      r = residual(h, lambda, v);
    }
    if (r > kResidualTol * scale) {
      std::ostringstream os;
      os << "eigenpair " << k << " residual " << r << " exceeds tolerance";
      throw ConvergenceError(os.str());
    }
    out.values[k] = lambda;
    out.vectors.col(k) = v;
    out.residuals[k] = r;
  }
  return out;
}

cd track_ground(const PerturbationSplit& split, double eps_scale) {
  const EigenSolution start = exact_eigensystem(split.h0);
  const cd origin = split.h0(0, 0);
  const double gap_tol = kDegeneracyTol * std::max(1.0, split.h0.norm());
  int coincident = 0;
  for (cd value : start.values) {
    if (std::abs(value - origin) < gap_tol) ++coincident;
  }
  if (coincident != 1) {
    throw TrackingError("level 1 is degenerate in the unperturbed spectrum");
  }
  if (eps_scale == 0.0) return origin;

  const Matrix4 perturbation = split.eps_a * split.va + split.eps_c * split.vc;
  Vector4 previous = Vector4::Unit(0);
  cd value = origin;
  for (int step = 1; step <= kTrackingSteps; ++step) {
    const double s = eps_scale * static_cast<double>(step) / kTrackingSteps;
    const EigenSolution sol = exact_eigensystem(split.h0 + s * perturbation);
    int best = 0;
    double best_overlap = -1.0;
    for (int k = 0; k < 4; ++k) {
      const double overlap = std::abs(previous.dot(sol.vectors.col(k)));
      if (overlap > best_overlap) {
        best_overlap = overlap;
        best = k;
      }
    }
    if (best_overlap < 0.5) {
      std::ostringstream os;
      os << "ground-state tracking lost at s = " << s << " (overlap " << best_overlap << ")";
      throw TrackingError(os.str());
    }
    previous = sol.vectors.col(best);
    value = sol.values[best];
  }
  return value;
}

cd track_ground(const SystemConfig& config, double eps_scale) {
  return track_ground(split(config), eps_scale);
}

cd ground_energy_at(const PerturbationSplit& split, double ea, double ec) {
  PerturbationSplit shifted = split;
  shifted.eps_a = ea;
  shifted.eps_c = ec;
  return track_ground(shifted, 1.0);
}

Vector4 propagate(const Matrix4& h, const Vector4& psi0, double t) {
  if (t == 0.0) return psi0;
  const EigenSolution sol = exact_eigensystem(h);
  Vector4 phases;
  for (int k = 0; k < 4; ++k) phases(k) = std::exp(cd(0.0, -t) * sol.values[k]);

  if (hermiticity_defect(h) == 0.0) {
    const Vector4 amplitudes = sol.vectors.adjoint() * psi0;
    return sol.vectors * phases.cwiseProduct(amplitudes);
  }

  const Eigen::FullPivLU<Matrix4> lu(sol.vectors);
  if (!lu.isInvertible()) throw ConvergenceError("defective matrix: eigenvectors not invertible");
  Matrix4 lambda = Matrix4::Zero();
  for (int k = 0; k < 4; ++k) lambda(k, k) = sol.values[k];
  const Matrix4 inverse = lu.inverse();
  const double defect = (sol.vectors * lambda * inverse - h).norm();
  if (defect > 1e-11 * std::max(1.0, h.norm())) {
    throw ConvergenceError("eigendecomposition does not reconstruct H");
  }
  return sol.vectors * phases.cwiseProduct(inverse * psi0);
}

double default_fd_step(const SystemConfig& config) {
  const auto d = complex_detunings(config);
  const double wb = std::abs(rabi_frequency(config.b));
  return 1e-2 * std::max({std::abs(d[1]), std::abs(d[2]), std::abs(d[3]), wb, 1.0});
}

namespace {

struct Stencil {
  std::vector<int> offsets;
  std::vector<double> weights;
};

// Central differences with O(h^2) error for derivative orders 0..4.
Stencil central_stencil(int order) {
  switch (order) {
    case 0: return {{0}, {1.0}};
    case 1: return {{-1, 1}, {-0.5, 0.5}};
    case 2: return {{-1, 0, 1}, {1.0, -2.0, 1.0}};
    case 3: return {{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}};
    case 4: return {{-2, -1, 0, 1, 2}, {1.0, -4.0, 6.0, -4.0, 1.0}};
    default: throw std::invalid_argument("derivative order must be in 0..4");
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

cd difference(const Evaluator& f, const Stencil& sa, const Stencil& sc, int p, int q, double h) {
  cd sum = 0.0;
  for (std::size_t i = 0; i < sa.offsets.size(); ++i) {
    for (std::size_t j = 0; j < sc.offsets.size(); ++j) {
      sum += sa.weights[i] * sc.weights[j] * f(sa.offsets[i] * h, sc.offsets[j] * h);
    }
  }
  return sum / (std::pow(h, p + q) * factorial(p) * factorial(q));
}

}  // namespace

cd fd_extract(const Evaluator& f, int p, int q, const FdOptions& options) {
  if (p < 0 || q < 0 || p + q > 4) throw std::invalid_argument("need p, q >= 0 and p + q <= 4");
  if (!(options.step > 0.0)) throw std::invalid_argument("finite-difference step must be > 0");
  const Stencil sa = central_stencil(p);
  const Stencil sc = central_stencil(q);
  const double h = options.step;
  const cd coarse = difference(f, sa, sc, p, q, h);
  const cd fine = difference(f, sa, sc, p, q, h / 2.0);
  const cd estimate = (4.0 * fine - coarse) / 3.0;
  const double spread = std::abs(fine - coarse);
  if (spread > 10.0 * options.tol * (std::abs(estimate) + options.atol)) {
    std::ostringstream os;
    os << "finite-difference levels disagree: |D(h) - D(h/2)| = " << spread << " at h = " << h;
    throw StepError(os.str());
  }
  return estimate;
}

}  // namespace nkerr
