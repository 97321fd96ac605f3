#include "conjulab/operators.hpp"

#include <cmath>
#include <random>

namespace conjulab {
namespace {

void require_window(const OpWindow& w) {
  if (w.half_width < 2 || w.margin < 0 || w.margin >= w.half_width)
    throw ParameterError("invalid operator window");
}

double uniform(std::mt19937_64& rng) {
  // Fixed bit-to-double mapping keeps probe corpora platform-independent.
  return double(rng() >> 11) * 0x1.0p-53;
}

CVector random_window_probe(std::mt19937_64& rng, const OpWindow& w) {
  const int support = std::min(48, w.interior_half());
  CVector v = CVector::Zero(w.dim());
  for (int n = -support; n <= support; ++n)
    v[n + w.half_width] = Complex(2.0 * uniform(rng) - 1.0, 2.0 * uniform(rng) - 1.0);
  v /= v.norm();
  return v;
}

enum class Flavor { J, Jstar };

// Matrix of M_psi J* is psi_hat(i - j); of M_psi J is psi_hat(i + j).
CMatrix symbol_matrix(const LaurentFunction& psi, Flavor flavor, const OpWindow& w) {
  const int hw = w.half_width;
  CMatrix m(w.dim(), w.dim());
  for (int i = -hw; i <= hw; ++i)
    for (int j = -hw; j <= hw; ++j)
      m(i + hw, j + hw) = psi.coeff(flavor == Flavor::Jstar ? i - j : i + j);
  return m;
}

// Interior block of a window matrix.
Eigen::Block<const CMatrix> interior(const CMatrix& m, const OpWindow& w) {
  const int i0 = w.margin;
  const int n = 2 * w.interior_half() + 1;
  return m.block(i0, i0, n, n);
}

double shift_residual(const AntilinearMap& a, bool zbar_side) {
  const OpWindow& w = a.window();
  const CMatrix& b = a.matrix();
  const int hw = w.half_width;
  const int ih = w.interior_half();
  double sq = 0.0;
  for (int i = -ih; i <= ih; ++i) {
    for (int j = -ih; j <= ih; ++j) {
      // (M_z A)(i,j) = A(i-1, j); (A M_z)(i,j) = A(i, j+1); (A M_zbar)(i,j) = A(i, j-1).
      const Complex lhs = b(i - 1 + hw, j + hw);
      const Complex rhs = zbar_side ? b(i + hw, j - 1 + hw) : b(i + hw, j + 1 + hw);
      sq += std::norm(lhs - rhs);
    }
  }
  return std::sqrt(sq);
}

}  // namespace

LinearMap::LinearMap(OpWindow window, CMatrix matrix) : window_(window), matrix_(std::move(matrix)) {
  require_window(window_);
  if (matrix_.rows() != window_.dim() || matrix_.cols() != window_.dim())
    throw ParameterError("matrix dimensions disagree with the window");
}

AntilinearMap::AntilinearMap(OpWindow window, CMatrix matrix)
    : window_(window), matrix_(std::move(matrix)) {
  require_window(window_);
  if (matrix_.rows() != window_.dim() || matrix_.cols() != window_.dim())
    throw ParameterError("matrix dimensions disagree with the window");
}

LaurentFunction AntilinearMap::apply(const LaurentFunction& f) const {
  const int hw = window_.half_width;
  const int n = f.grid().band;
  if (n < hw) throw ParameterError("function band is narrower than the operator window");
  CVector v(window_.dim());
  for (int i = -hw; i <= hw; ++i) v[i + hw] = f.coeff(i);
  CVector out = apply(v);
  CVector coeffs = CVector::Zero(2 * n + 1);
  for (int i = -hw; i <= hw; ++i) coeffs[i + n] = out[i + hw];
  return LaurentFunction::from_coeffs(f.grid(), coeffs);
}

LinearMap build_m(const LaurentFunction& phi, const OpWindow& window) {
  require_window(window);
  const int hw = window.half_width;
  CMatrix m(window.dim(), window.dim());
  for (int i = -hw; i <= hw; ++i)
    for (int j = -hw; j <= hw; ++j) m(i + hw, j + hw) = phi.coeff(i - j);
  return LinearMap(window, std::move(m));
}

AntilinearMap build_j(const OpWindow& window) {
  require_window(window);
  CMatrix m = CMatrix::Zero(window.dim(), window.dim());
  for (int i = 0; i < window.dim(); ++i) m(i, window.dim() - 1 - i) = Complex(1.0, 0.0);
  return AntilinearMap(window, std::move(m));
}

AntilinearMap build_jstar(const OpWindow& window) {
  require_window(window);
  return AntilinearMap(window, CMatrix::Identity(window.dim(), window.dim()));
}

AntilinearMap build_ctheta(const LaurentFunction& theta_grid, const OpWindow& window) {
  require_window(window);
  // C_theta = M_{theta zbar} J: matrix entry (i, j) = (theta zbar)^hat_{i+j}.
  const int hw = window.half_width;
  CMatrix m(window.dim(), window.dim());
  for (int i = -hw; i <= hw; ++i)
    for (int j = -hw; j <= hw; ++j) m(i + hw, j + hw) = theta_grid.coeff(i + j + 1);
  return AntilinearMap(window, std::move(m));
}

AntilinearMap build_mpsi_j(const LaurentFunction& psi, const OpWindow& window,
                           double unimodular_tol) {
  require_window(window);
  if (!is_unimodular(psi, unimodular_tol).ok)
    throw ParameterError("psi must be unimodular");
  return AntilinearMap(window, symbol_matrix(psi, Flavor::J, window));
}

AntilinearMap build_mpsi_jstar(const LaurentFunction& psi, const OpWindow& window,
                               double unimodular_tol) {
  require_window(window);
  if (!is_unimodular(psi, unimodular_tol).ok)
    throw ParameterError("psi must be unimodular");
  return AntilinearMap(window, symbol_matrix(psi, Flavor::Jstar, window));
}

AntilinearMap build_ckl(int k, int l, const OpWindow& window) {
  require_window(window);
  const int hw = window.half_width;
  if (k >= l || k < -hw || l > hw)
    throw ParameterError("indices must satisfy -half_width <= k < l <= half_width");
  CMatrix m = CMatrix::Identity(window.dim(), window.dim());
  m(k + hw, k + hw) = Complex(0.0, 0.0);
  m(l + hw, l + hw) = Complex(0.0, 0.0);
  m(k + hw, l + hw) = Complex(1.0, 0.0);
  m(l + hw, k + hw) = Complex(1.0, 0.0);
  return AntilinearMap(window, std::move(m));
}

double commutes_with_mz(const AntilinearMap& a) { return shift_residual(a, false); }

double intertwines_mz_mzbar(const AntilinearMap& a) { return shift_residual(a, true); }

ConjugationCheck check_conjugation(const AntilinearMap& a, std::uint64_t seed, int probes) {
  std::mt19937_64 rng(seed);
  ConjugationCheck result;
  for (int p = 0; p < probes; ++p) {
    const CVector f = random_window_probe(rng, a.window());
    const CVector g = random_window_probe(rng, a.window());
    const CVector af = a.apply(f);
    const CVector ag = a.apply(g);
    result.involution_residual =
        std::max(result.involution_residual, (a.apply(af) - f).norm());
    // <Af, Ag> = <g, f> : Eigen dot conjugates the left argument.
    const Complex lhs = ag.dot(af);
    const Complex rhs = f.dot(g);
    result.isometry_residual = std::max(result.isometry_residual, std::abs(lhs - rhs));
  }
  return result;
}

std::string to_string(ConjugationClass c) {
  switch (c) {
    case ConjugationClass::MzConjugation: return "mz_conjugation";
    case ConjugationClass::MzCommuting: return "mz_commuting";
    default: return "neither";
  }
}

SymbolRecovery recover_symbol(const AntilinearMap& a, const GridParams& grid, double class_tol) {
  const OpWindow& w = a.window();
  if (grid.band < w.half_width)
    throw ParameterError("grid band must cover the operator window");

  SymbolRecovery rec;
  // psi = A(1): J(1) = J*(1) = 1, so the symbol is the image of the constant.
  CVector one = CVector::Zero(w.dim());
  one[w.half_width] = Complex(1.0, 0.0);
  const CVector psi_window = a.apply(one);
  CVector coeffs = CVector::Zero(2 * grid.band + 1);
  for (int i = -w.half_width; i <= w.half_width; ++i)
    coeffs[i + grid.band] = psi_window[i + w.half_width];
  rec.psi = LaurentFunction::from_coeffs(grid, coeffs);

  rec.commuting_residual = commutes_with_mz(a);
  rec.intertwining_residual = intertwines_mz_mzbar(a);

  const bool commuting = rec.commuting_residual < class_tol;
  const bool intertwining = rec.intertwining_residual < class_tol;
  if (commuting == intertwining) {
    rec.type = ConjugationClass::Neither;
    rec.unimodularity_residual = is_unimodular(rec.psi, 1.0).residual;
    rec.symmetry_residual = is_symmetric(rec.psi, 1.0).residual;
    rec.reconstruction_residual =
        std::min(rec.commuting_residual, rec.intertwining_residual);
    return rec;
  }

  rec.type = commuting ? ConjugationClass::MzCommuting : ConjugationClass::MzConjugation;
  const CMatrix rebuilt =
      symbol_matrix(rec.psi, commuting ? Flavor::Jstar : Flavor::J, w);
  rec.reconstruction_residual = (interior(a.matrix(), w) - interior(rebuilt, w)).norm();
  rec.unimodularity_residual = is_unimodular(rec.psi, 1.0).residual;
  rec.symmetry_residual = is_symmetric(rec.psi, 1.0).residual;
  return rec;
}

double is_c_symmetric(const LinearMap& a, const AntilinearMap& c) {
  if (!(a.window() == c.window())) throw ParameterError("operator windows differ");
  const CMatrix sandwich = c.matrix() * a.matrix().conjugate() * c.matrix().conjugate();
  const CMatrix adj = a.matrix().adjoint();
  return (interior(sandwich, a.window()) - interior(adj, a.window())).norm();
}

LaurentFunction apply_j(const LaurentFunction& f) { return conj_j(f); }

LaurentFunction apply_jstar(const LaurentFunction& f) { return sharp(f); }

LaurentFunction apply_ctheta(const LaurentFunction& theta_grid, const LaurentFunction& f) {
  if (!(theta_grid.grid() == f.grid())) throw ParameterError("grid parameters differ");
  const CVector& nodes = grid_nodes(f.grid().size);
  CVector s(f.grid().size);
  for (int j = 0; j < f.grid().size; ++j)
    s[j] = theta_grid.samples()[j] * std::conj(nodes[j]) * std::conj(f.samples()[j]);
  return LaurentFunction::from_samples(f.grid(), s);
}

LaurentFunction apply_mpsi_j(const LaurentFunction& psi, const LaurentFunction& f) {
  if (!(psi.grid() == f.grid())) throw ParameterError("grid parameters differ");
  return LaurentFunction::from_samples(f.grid(),
                                       psi.samples().cwiseProduct(f.samples().conjugate()));
}

LaurentFunction apply_mpsi_jstar(const LaurentFunction& psi, const LaurentFunction& f) {
  if (!(psi.grid() == f.grid())) throw ParameterError("grid parameters differ");
  const int m = f.grid().size;
  CVector s(m);
  for (int j = 0; j < m; ++j)
    s[j] = psi.samples()[j] * std::conj(f.samples()[(m - j) % m]);
  return LaurentFunction::from_samples(f.grid(), s);
}

}  // namespace conjulab
