#pragma once
//
// Two-variable non-degenerate Rayleigh-Schroedinger perturbation theory for
// H = H0 + eps_a Va + eps_c Vc.
//
// The unperturbed basis is the dressed basis of H0: bare levels 1 and 4 plus
// the two dressed states of the pump-coupled 2-3 block. Eigenstate n is
// expanded as
//
//   E_n     = sum_{p,q} eps_a^p eps_c^q E^(p,q)
//   |phi_n> = sum_{p,q} eps_a^p eps_c^q sum_m a^m(p,q) |phi_m^(0)>
//
// and the coefficients follow from the order-by-order recursion
//
//   sum'_{(i,j)} E^(i,j) a^n(p-i,q-j) = <n|Va|phi^(p-1,q)> + <n|Vc|phi^(p,q-1)>
//   a^m(p,q) (E_n - E_m) = <m|Va|phi^(p-1,q)> + <m|Vc|phi^(p,q-1)>
//                          - sum'_{(i,j)} E^(i,j) a^m(p-i,q-j)        (m != n)
//   sum_{i<=p, j<=q} sum_s pair(a^s(i,j), a^s(p-i,q-j)) = 0
//
// where sum' excludes (i,j) = (0,0). Bras <m| are the dual (left) vectors
// of the dressed basis, so the recursion stays valid when complex detunings
// make H0 non-Hermitian. The pairing in the normalisation condition is
// conj(x) y for Hermitian problems (with a^n(p,q) chosen real) and the
// bilinear x y otherwise.

#include "nkerr/model.hpp"

#include <array>
#include <optional>
#include <vector>

namespace nkerr {

inline constexpr double kDegeneracyTol = 1e-8;

enum class Pairing { conjugate, bilinear };

struct DressedBasis {
  // Unperturbed energies of |1>, the lower dressed state, the upper dressed
  // state and |4>, in that order.
  std::array<cd, 4> energies{};
  Matrix4 right = Matrix4::Identity();  // column m is |phi_m^(0)>
  Matrix4 left = Matrix4::Identity();   // row m is the dual <phi_m^(0)|
  // Norms of (W_b, 2(lambda -/+ d1)) in the lossless case.
  double normalizer_minus = 0.0;
  double normalizer_plus = 0.0;
  Pairing pairing = Pairing::conjugate;
};

// Throws DegeneracyError when two unperturbed energies are closer than
// tol * max(1, ||H0||_F).
DressedBasis dressed_basis(const Hamiltonian4& h0, double tol = kDegeneracyTol);

class SeriesTable {
 public:
  // Table for eigenstate `state` (1..4) holding only the zeroth order.
  SeriesTable(const PerturbationSplit& split, int state, int max_order);

  int state() const { return state_; }
  int max_order() const { return max_order_; }
  const DressedBasis& basis() const { return basis_; }
  Pairing pairing() const { return basis_.pairing; }

  // <phi_m^(0)| V |phi_s^(0)> in the dressed basis (0-based indices).
  const Matrix4& va_dressed() const { return va_; }
  const Matrix4& vc_dressed() const { return vc_; }

  bool has_energy(int p, int q) const;
  bool has_coefficient(int m, int p, int q) const;

  // Throw MissingOrderError when the entry has not been computed.
  cd energy(int p, int q) const;
  cd coefficient(int m, int p, int q) const;  // a^m(p,q), m in 1..4
  Vector4 coefficients(int p, int q) const;   // all four, dressed basis

  void set_energy(int p, int q, cd value);
  void set_coefficient(int m, int p, int q, cd value);

 private:
  std::size_t slot(int p, int q) const;

  int state_;
  int max_order_;
  DressedBasis basis_;
  Matrix4 va_;
  Matrix4 vc_;
  std::vector<std::optional<cd>> energies_;
  std::vector<std::array<std::optional<cd>, 4>> coefficients_;
};

// E^(p,q) from the lower orders already present in the table.
cd energy_correction(const SeriesTable& table, int p, int q);

// a^m(p,q). For m != state this needs E^(p,q)-independent lower orders and
// a non-zero energy gap; for m == state it solves the normalisation
// condition.
cd state_correction(const SeriesTable& table, int m, int p, int q);

// Table filled for every p + q <= max_order, one diagonal p + q = k at a
// time with p ascending inside a diagonal.
SeriesTable build_series(const PerturbationSplit& split, int state, int max_order);

// sum_{p+q <= total_order} eps_a^p eps_c^q E^(p,q)
cd evaluate_energy(const SeriesTable& table, double eps_a, double eps_c, int total_order);

// The truncated eigenvector in the bare basis.
Vector4 evaluate_state(const SeriesTable& table, double eps_a, double eps_c, int total_order);

// Left-hand side of the normalisation condition at order (p,q).
cd normalization_residual(const SeriesTable& table, int p, int q);

}  // namespace nkerr
