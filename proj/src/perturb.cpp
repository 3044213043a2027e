#include "nkerr/perturb.hpp"

#include "nkerr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nkerr {

namespace {

void check_block_structure(const Hamiltonian4& h0) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const bool diagonal = i == j;
      const bool pump_block = (i == 1 && j == 2) || (i == 2 && j == 1);
      if (!diagonal && !pump_block && h0(i, j) != 0.0) {
        throw std::invalid_argument("H0 must couple only levels 2 and 3");
      }
    }
  }
}

// Eigenvector of [[d1, h23], [h32, d2]] for eigenvalue lambda. Of the two
// algebraically equivalent forms the better conditioned one is kept.
Eigen::Vector2cd block_eigenvector(cd d1, cd d2, cd h23, cd h32, cd lambda) {
  const Eigen::Vector2cd u(h23, lambda - d1);
  const Eigen::Vector2cd w(lambda - d2, h32);
  return u.norm() >= w.norm() ? u : w;
}

std::string describe_pair(int m, int n, cd em, cd en) {
  std::ostringstream os;
  os << "degenerate unperturbed energies: lambda_" << m << " = " << em << ", lambda_" << n
     << " = " << en;
  return os.str();
}

void check_order(int p, int q) {
  if (p < 0 || q < 0) throw std::invalid_argument("perturbation orders must be >= 0");
}

void check_level(int m) {
  if (m < 1 || m > 4) throw std::out_of_range("level index must be in 1..4");
}

// <m| Va |phi^(p-1,q)> + <m| Vc |phi^(p,q-1)>, m 0-based.
cd coupling_term(const SeriesTable& t, int m0, int p, int q) {
  cd sum = 0.0;
  if (p >= 1) sum += (t.va_dressed().row(m0) * t.coefficients(p - 1, q)).value();
  if (q >= 1) sum += (t.vc_dressed().row(m0) * t.coefficients(p, q - 1)).value();
  return sum;
}

}  // namespace

DressedBasis dressed_basis(const Hamiltonian4& h0, double tol) {
  check_block_structure(h0);

  DressedBasis basis;
  const cd d1 = h0(1, 1);
  const cd d2 = h0(2, 2);
  const cd h23 = h0(1, 2);
  const cd h32 = h0(2, 1);
  const bool hermitian = hermiticity_defect(h0) == 0.0;
  basis.pairing = hermitian ? Pairing::conjugate : Pairing::bilinear;

  const cd root = std::sqrt((d1 - d2) * (d1 - d2) + 4.0 * h23 * h32);
  const cd lower = 0.5 * ((d1 + d2) - root);
  const cd upper = 0.5 * ((d1 + d2) + root);
  basis.energies = {h0(0, 0), lower, upper, h0(3, 3)};

  const double scale = std::max(1.0, h0.norm());
  for (int m = 0; m < 4; ++m) {
    for (int n = m + 1; n < 4; ++n) {
      if (std::abs(basis.energies[m] - basis.energies[n]) < tol * scale) {
        throw DegeneracyError(describe_pair(m + 1, n + 1, basis.energies[m], basis.energies[n]));
      }
    }
  }

  Eigen::Matrix2cd r;
  r.col(0) = block_eigenvector(d1, d2, h23, h32, lower);
  r.col(1) = block_eigenvector(d1, d2, h23, h32, upper);
  Eigen::Matrix2cd l;
  if (hermitian) {
    r.col(0).normalize();
    r.col(1).normalize();
    l = r.adjoint();
  } else {
    for (int k = 0; k < 2; ++k) {
      const cd self = r.col(k).transpose() * r.col(k);
      if (std::abs(self) > 1e-6 * r.col(k).squaredNorm()) {
        r.col(k) /= std::sqrt(self);
      } else {
        r.col(k).normalize();
      }
    }
    l = r.inverse();
  }
  basis.right.block<2, 2>(1, 1) = r;
  basis.left.block<2, 2>(1, 1) = l;

  // (W_b, 2(lambda - d1)) with W_b = 2 h23.
  basis.normalizer_minus = std::hypot(std::abs(2.0 * h23), std::abs(2.0 * (lower - d1)));
  basis.normalizer_plus = std::hypot(std::abs(2.0 * h23), std::abs(2.0 * (upper - d1)));
  return basis;
}

SeriesTable::SeriesTable(const PerturbationSplit& split, int state, int max_order)
    : state_(state), max_order_(max_order), basis_(dressed_basis(split.h0)) {
  check_level(state);
  if (max_order < 0) throw std::invalid_argument("max_order must be >= 0");
  va_ = basis_.left * split.va * basis_.right;
  vc_ = basis_.left * split.vc * basis_.right;
  const auto slots = static_cast<std::size_t>((max_order + 1) * (max_order + 2) / 2);
  energies_.resize(slots);
  coefficients_.resize(slots);
  energies_[0] = basis_.energies[state - 1];
  for (int m = 1; m <= 4; ++m) coefficients_[0][m - 1] = cd(m == state ? 1.0 : 0.0);
}

std::size_t SeriesTable::slot(int p, int q) const {
  const int k = p + q;
  return static_cast<std::size_t>(k * (k + 1) / 2 + p);
}

bool SeriesTable::has_energy(int p, int q) const {
  if (p < 0 || q < 0 || p + q > max_order_) return false;
  return energies_[slot(p, q)].has_value();
}

bool SeriesTable::has_coefficient(int m, int p, int q) const {
  check_level(m);
  if (p < 0 || q < 0 || p + q > max_order_) return false;
  return coefficients_[slot(p, q)][m - 1].has_value();
}

cd SeriesTable::energy(int p, int q) const {
  if (!has_energy(p, q)) {
    throw MissingOrderError("E^(" + std::to_string(p) + "," + std::to_string(q) +
                            ") not available");
  }
  return *energies_[slot(p, q)];
}

cd SeriesTable::coefficient(int m, int p, int q) const {
  if (!has_coefficient(m, p, q)) {
    throw MissingOrderError("a^" + std::to_string(m) + "(" + std::to_string(p) + "," +
                            std::to_string(q) + ") not available");
  }
  return *coefficients_[slot(p, q)][m - 1];
}

Vector4 SeriesTable::coefficients(int p, int q) const {
  Vector4 v;
  for (int m = 1; m <= 4; ++m) v(m - 1) = coefficient(m, p, q);
  return v;
}

void SeriesTable::set_energy(int p, int q, cd value) {
  check_order(p, q);
  if (p + q > max_order_) throw std::out_of_range("order exceeds table max_order");
  energies_[slot(p, q)] = value;
}

void SeriesTable::set_coefficient(int m, int p, int q, cd value) {
  check_level(m);
  check_order(p, q);
  if (p + q > max_order_) throw std::out_of_range("order exceeds table max_order");
  coefficients_[slot(p, q)][m - 1] = value;
}

cd energy_correction(const SeriesTable& table, int p, int q) {
  check_order(p, q);
  if (p == 0 && q == 0) return table.basis().energies[table.state() - 1];
  const int n = table.state();
  cd value = coupling_term(table, n - 1, p, q);
  for (int i = 0; i <= p; ++i) {
    for (int j = 0; j <= q; ++j) {
      if ((i == 0 && j == 0) || (i == p && j == q)) continue;
      value -= table.energy(i, j) * table.coefficient(n, p - i, q - j);
    }
  }
  return value / table.coefficient(n, 0, 0);
}

cd state_correction(const SeriesTable& table, int m, int p, int q) {
  check_level(m);
  check_order(p, q);
  const int n = table.state();
  if (p == 0 && q == 0) return cd(m == n ? 1.0 : 0.0);

  if (m != n) {
    const cd gap = table.basis().energies[n - 1] - table.basis().energies[m - 1];
    if (gap == 0.0) {
      throw DegeneracyError("vanishing energy denominator between levels " + std::to_string(n) +
                            " and " + std::to_string(m));
    }
    cd value = coupling_term(table, m - 1, p, q);
    for (int i = 0; i <= p; ++i) {
      for (int j = 0; j <= q; ++j) {
        // (p,q) multiplies a^m(0,0) = 0.
        if ((i == 0 && j == 0) || (i == p && j == q)) continue;
        value -= table.energy(i, j) * table.coefficient(m, p - i, q - j);
      }
    }
    return value / gap;
  }

  cd rest = 0.0;
  for (int i = 0; i <= p; ++i) {
    for (int j = 0; j <= q; ++j) {
      if ((i == 0 && j == 0) || (i == p && j == q)) continue;
      const Vector4 x = table.coefficients(i, j);
      const Vector4 y = table.coefficients(p - i, q - j);
      rest += table.pairing() == Pairing::conjugate ? x.dot(y) : x.cwiseProduct(y).sum();
    }
  }
  if (table.pairing() == Pairing::conjugate) return cd(-0.5 * rest.real(), 0.0);
  return -0.5 * rest;
}

SeriesTable build_series(const PerturbationSplit& split, int state, int max_order) {
  SeriesTable table(split, state, max_order);
  for (int k = 1; k <= max_order; ++k) {
    for (int p = 0; p <= k; ++p) {
      const int q = k - p;
      table.set_energy(p, q, energy_correction(table, p, q));
      for (int m = 1; m <= 4; ++m) {
        if (m != state) table.set_coefficient(m, p, q, state_correction(table, m, p, q));
      }
      table.set_coefficient(state, p, q, state_correction(table, state, p, q));
    }
  }
  return table;
}

namespace {

std::vector<double> powers(double x, int n) {
  std::vector<double> out(static_cast<std::size_t>(n + 1), 1.0);
  for (int k = 1; k <= n; ++k) out[k] = out[k - 1] * x;
  return out;
}

void check_total_order(const SeriesTable& table, int total_order) {
  if (total_order < 0 || total_order > table.max_order()) {
    throw std::invalid_argument("total_order must lie in [0, max_order]");
  }
}

}  // namespace

cd evaluate_energy(const SeriesTable& table, double eps_a, double eps_c, int total_order) {
  check_total_order(table, total_order);
  const auto pa = powers(eps_a, total_order);
  const auto pc = powers(eps_c, total_order);
  cd sum = 0.0;
  for (int k = 0; k <= total_order; ++k) {
    for (int p = 0; p <= k; ++p) sum += pa[p] * pc[k - p] * table.energy(p, k - p);
  }
  return sum;
}

Vector4 evaluate_state(const SeriesTable& table, double eps_a, double eps_c, int total_order) {
  check_total_order(table, total_order);
  const auto pa = powers(eps_a, total_order);
  const auto pc = powers(eps_c, total_order);
  Vector4 dressed = Vector4::Zero();
  for (int k = 0; k <= total_order; ++k) {
    for (int p = 0; p <= k; ++p) dressed += (pa[p] * pc[k - p]) * table.coefficients(p, k - p);
  }
  return table.basis().right * dressed;
}

cd normalization_residual(const SeriesTable& table, int p, int q) {
  check_order(p, q);
  cd sum = 0.0;
  for (int i = 0; i <= p; ++i) {
    for (int j = 0; j <= q; ++j) {
      const Vector4 x = table.coefficients(i, j);
      const Vector4 y = table.coefficients(p - i, q - j);
      sum += table.pairing() == Pairing::conjugate ? x.dot(y) : x.cwiseProduct(y).sum();
    }
  }
  return sum;
}

}  // namespace nkerr
