#ifndef CONJULAB_OPERATORS_HPP
#define CONJULAB_OPERATORS_HPP

#include <cstdint>
#include <string>

#include "conjulab/blaschke.hpp"
#include "conjulab/fourier.hpp"
#include "conjulab/types.hpp"

namespace conjulab {

/// Coefficient window on which operator matrices act: the monomial basis
/// {z^n : |n| <= half_width}. Multiplication matrices are only exact away
/// from the window edges, so residuals are measured on the interior block
/// |n| <= half_width - margin. The margin must dominate the bandwidth of
/// every symbol involved.
struct OpWindow {
  int half_width = 384;
  int margin = 192;

  int dim() const { return 2 * half_width + 1; }
  int interior_half() const { return half_width - margin; }

  bool operator==(const OpWindow&) const = default;
};

/// Linear operator on the window: v -> matrix * v.
class LinearMap {
 public:
  LinearMap(OpWindow window, CMatrix matrix);

  const OpWindow& window() const { return window_; }
  const CMatrix& matrix() const { return matrix_; }
  CVector apply(const CVector& v) const { return matrix_ * v; }

 private:
  OpWindow window_;
  CMatrix matrix_;
};

/// Antilinear operator on the window, stored conjugate-first:
/// v -> matrix * conj(v).
class AntilinearMap {
 public:
  AntilinearMap(OpWindow window, CMatrix matrix);

  const OpWindow& window() const { return window_; }
  const CMatrix& matrix() const { return matrix_; }
  CVector apply(const CVector& v) const { return matrix_ * v.conjugate(); }

  /// Apply through the window: band coefficients outside it are dropped.
  LaurentFunction apply(const LaurentFunction& f) const;

 private:
  OpWindow window_;
  CMatrix matrix_;
};

/// Banded convolution matrix of multiplication by phi.
LinearMap build_m(const LaurentFunction& phi, const OpWindow& window);

/// J f = conj(f).
AntilinearMap build_j(const OpWindow& window);
/// J* f = f#.
AntilinearMap build_jstar(const OpWindow& window);
/// C_theta f = theta * conj(z) * conj(f).
AntilinearMap build_ctheta(const LaurentFunction& theta_grid, const OpWindow& window);

/// M_psi J; requires unimodular psi.
AntilinearMap build_mpsi_j(const LaurentFunction& psi, const OpWindow& window,
                           double unimodular_tol = 1e-8);
/// M_psi J*; requires unimodular psi. Symmetry of psi is not enforced:
/// without it the result is an antilinear isometry that fails the
/// involution check, which the caller can surface.
AntilinearMap build_mpsi_jstar(const LaurentFunction& psi, const OpWindow& window,
                               double unimodular_tol = 1e-8);

/// Coefficient transposition with conjugation: swaps indices k and l and
/// conjugates everything. Requires -half_width <= k < l <= half_width.
AntilinearMap build_ckl(int k, int l, const OpWindow& window);

/// Frobenius residual of M_z A - A M_z on the interior block.
double commutes_with_mz(const AntilinearMap& a);
/// Frobenius residual of M_z A - A M_zbar on the interior block.
double intertwines_mz_mzbar(const AntilinearMap& a);

struct ConjugationCheck {
  double involution_residual = 0.0;
  double isometry_residual = 0.0;
  bool pass(double tol) const { return involution_residual < tol && isometry_residual < tol; }
};

/// Probe-based check of the conjugation axioms: ||A(A(f)) - f|| and
/// |<Af, Ag> - <g, f>| over a seeded corpus of unit probes supported in
/// the interior of the window.
ConjugationCheck check_conjugation(const AntilinearMap& a, std::uint64_t seed,
                                   int probes = 8);

enum class ConjugationClass { MzConjugation, MzCommuting, Neither };

std::string to_string(ConjugationClass c);

struct SymbolRecovery {
  ConjugationClass type = ConjugationClass::Neither;
  LaurentFunction psi;              // A(1)
  double commuting_residual = 0.0;     // M_z A - A M_z
  double intertwining_residual = 0.0;  // M_z A - A M_zbar
  double reconstruction_residual = 0.0;
  double unimodularity_residual = 0.0;
  double symmetry_residual = 0.0;
};

/// Classify a conjugation by which shift relation it satisfies and recover
/// its symbol psi = A(1); verifies the M_psi J / M_psi J* reconstruction
/// on the interior block. Both relations failing yields Neither with the
/// raw residuals as diagnostics.
SymbolRecovery recover_symbol(const AntilinearMap& a, const GridParams& grid,
                              double class_tol = 1e-6);

/// Frobenius residual of C A C - A* on the interior block.
double is_c_symmetric(const LinearMap& a, const AntilinearMap& c);

// Function-level actions of the same conjugations, built from grid samples.
// These act at the full band limit and are the fast path for probe sweeps.
LaurentFunction apply_j(const LaurentFunction& f);
LaurentFunction apply_jstar(const LaurentFunction& f);
LaurentFunction apply_ctheta(const LaurentFunction& theta_grid, const LaurentFunction& f);
LaurentFunction apply_mpsi_j(const LaurentFunction& psi, const LaurentFunction& f);
LaurentFunction apply_mpsi_jstar(const LaurentFunction& psi, const LaurentFunction& f);

}  // namespace conjulab

#endif  // CONJULAB_OPERATORS_HPP
