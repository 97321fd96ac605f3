#ifndef CONJULAB_MODELSPACE_HPP
#define CONJULAB_MODELSPACE_HPP

#include <utility>
#include <vector>

#include "conjulab/blaschke.hpp"
#include "conjulab/fourier.hpp"
#include "conjulab/operators.hpp"
#include "conjulab/types.hpp"

namespace conjulab {

/// Orthonormal Takenaka-Malmquist basis of the model space K_theta for a
/// finite Blaschke product theta:
///   e_k = sqrt(1 - |a_k|^2) / (1 - conj(a_k) z) * prod_{j<k} factor(a_j, z),
/// over the canonical zero order. The recursion is multiplicity-agnostic,
/// so repeated zeros are handled without special cases.
class ModelSpaceBasis {
 public:
  const BlaschkeProduct& theta() const { return theta_; }
  const LaurentFunction& theta_grid() const { return theta_grid_; }
  int dim() const { return int(basis_.size()); }
  const LaurentFunction& e(int k) const { return basis_.at(k); }
  const std::vector<LaurentFunction>& functions() const { return basis_; }

 private:
  friend ModelSpaceBasis tm_basis(const BlaschkeProduct&, const GridParams&);

  BlaschkeProduct theta_;
  LaurentFunction theta_grid_;
  std::vector<LaurentFunction> basis_;
};

/// Builds the basis; refuses constant theta (trivial model space).
ModelSpaceBasis tm_basis(const BlaschkeProduct& theta, const GridParams& grid);

/// Coordinates <f, e_k> of the projection onto K_theta.
CVector coordinates(const LaurentFunction& f, const ModelSpaceBasis& basis);

/// Orthogonal projection onto K_theta via the basis expansion.
LaurentFunction project(const LaurentFunction& f, const ModelSpaceBasis& basis);

/// Reproducing kernel at the origin, k_0 = 1 - conj(alpha(0)) alpha.
LaurentFunction kernel_k0(const BlaschkeProduct& alpha, const GridParams& grid);
/// Its conjugate kernel, C_alpha k_0 = conj(z) (alpha - alpha(0)).
LaurentFunction kernel_k0_tilde(const BlaschkeProduct& alpha, const GridParams& grid);

/// Matrix of the truncated Toeplitz operator A_phi: f -> P_theta(phi f) in
/// the Takenaka-Malmquist basis.
struct TTOMatrix {
  BlaschkeProduct theta;
  LaurentFunction symbol;
  CMatrix entries;
};

TTOMatrix tto_matrix(const LaurentFunction& phi, const ModelSpaceBasis& basis);
/// A_z, the truncated shift.
TTOMatrix truncated_shift(const ModelSpaceBasis& basis);

/// Compression of an antilinear map to model-space bases: the matrix of
/// P_dst A on the src basis (action c -> matrix * conj(c)) together with
/// the leakage max_k ||A e_k - P_dst A e_k||. The containment
/// A(K_src) in K_dst holds exactly when the leakage is small.
struct RestrictedAntilinear {
  CMatrix matrix;
  double leakage = 0.0;
};

RestrictedAntilinear restrict_antilinear(const AntilinearMap& a, const ModelSpaceBasis& src,
                                         const ModelSpaceBasis& dst);

template <class Apply>
RestrictedAntilinear restrict_antilinear_fn(Apply&& apply, const ModelSpaceBasis& src,
                                            const ModelSpaceBasis& dst) {
  RestrictedAntilinear r;
  r.matrix.resize(dst.dim(), src.dim());
  for (int k = 0; k < src.dim(); ++k) {
    const LaurentFunction image = apply(src.e(k));
    const CVector c = coordinates(image, dst);
    r.matrix.col(k) = c;
    LaurentFunction proj = project(image, dst);
    r.leakage = std::max(r.leakage, l2_norm(image - proj));
  }
  return r;
}

/// Membership residual of f in theta H^2: the norm of the co-analytic part
/// of conj(theta) f.
double membership_theta_h2(const LaurentFunction& f, const LaurentFunction& theta_grid);

}  // namespace conjulab

#endif  // CONJULAB_MODELSPACE_HPP
