#include "conjulab/modelspace.hpp"

#include <cmath>

namespace conjulab {

ModelSpaceBasis tm_basis(const BlaschkeProduct& theta, const GridParams& grid) {
  if (theta.is_constant())
    throw ParameterError("model space of a constant inner function is trivial");
  ModelSpaceBasis b;
  b.theta_ = theta;
  b.theta_grid_ = to_grid(theta, grid);

  const CVector& nodes = grid_nodes(grid.size);
  CVector partial = CVector::Constant(grid.size, Complex(1.0, 0.0));
  for (int k = 0; k < theta.degree(); ++k) {
    const Complex a = theta.zeros()[std::size_t(k)];
    const double scale = std::sqrt(1.0 - std::norm(a));
    CVector s(grid.size);
    for (int j = 0; j < grid.size; ++j)
      s[j] = scale * partial[j] / (Complex(1.0, 0.0) - std::conj(a) * nodes[j]);
    b.basis_.push_back(LaurentFunction::from_samples(grid, s));
    for (int j = 0; j < grid.size; ++j) partial[j] *= blaschke_factor(a, nodes[j]);
  }
  return b;
}

CVector coordinates(const LaurentFunction& f, const ModelSpaceBasis& basis) {
  CVector c(basis.dim());
  for (int k = 0; k < basis.dim(); ++k) c[k] = inner_product(f, basis.e(k));
  return c;
}

LaurentFunction project(const LaurentFunction& f, const ModelSpaceBasis& basis) {
  const CVector c = coordinates(f, basis);
  LaurentFunction out = LaurentFunction::zero(f.grid());
  for (int k = 0; k < basis.dim(); ++k) out = out + c[k] * basis.e(k);
  return out;
}

LaurentFunction kernel_k0(const BlaschkeProduct& alpha, const GridParams& grid) {
  if (alpha.is_constant()) throw ParameterError("kernel requires a nonconstant inner function");
  const Complex a0 = evaluate(alpha, Complex(0.0, 0.0));
  const LaurentFunction ag = to_grid(alpha, grid);
  return LaurentFunction::constant(grid, Complex(1.0, 0.0)) - std::conj(a0) * ag;
}

LaurentFunction kernel_k0_tilde(const BlaschkeProduct& alpha, const GridParams& grid) {
  if (alpha.is_constant()) throw ParameterError("kernel requires a nonconstant inner function");
  const Complex a0 = evaluate(alpha, Complex(0.0, 0.0));
  const LaurentFunction ag = to_grid(alpha, grid);
  const LaurentFunction shifted = ag - LaurentFunction::constant(grid, a0);
  return multiply(LaurentFunction::monomial(grid, -1), shifted);
}

TTOMatrix tto_matrix(const LaurentFunction& phi, const ModelSpaceBasis& basis) {
  TTOMatrix t;
  t.theta = basis.theta();
  t.symbol = phi;
  t.entries.resize(basis.dim(), basis.dim());
  for (int j = 0; j < basis.dim(); ++j) {
    const LaurentFunction image = multiply(phi, basis.e(j));
    // <P(phi e_j), e_i> = <phi e_j, e_i> since e_i lies in K_theta.
    for (int i = 0; i < basis.dim(); ++i) t.entries(i, j) = inner_product(image, basis.e(i));
  }
  return t;
}

TTOMatrix truncated_shift(const ModelSpaceBasis& basis) {
  return tto_matrix(LaurentFunction::monomial(basis.theta_grid().grid(), 1), basis);
}

RestrictedAntilinear restrict_antilinear(const AntilinearMap& a, const ModelSpaceBasis& src,
                                         const ModelSpaceBasis& dst) {
  return restrict_antilinear_fn([&a](const LaurentFunction& f) { return a.apply(f); }, src, dst);
}

double membership_theta_h2(const LaurentFunction& f, const LaurentFunction& theta_grid) {
  return negative_part_norm(multiply(conj_j(theta_grid), f));
}

}  // namespace conjulab
