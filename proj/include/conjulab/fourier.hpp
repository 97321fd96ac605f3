#ifndef CONJULAB_FOURIER_HPP
#define CONJULAB_FOURIER_HPP

#include <utility>

#include "conjulab/types.hpp"

namespace conjulab {

/// Uniform grid on the unit circle together with a Fourier band limit.
/// size is a power of two; band <= size/2 - 1 so that every coefficient
/// index in [-band, band] maps to a distinct DFT bin.
struct GridParams {
  int size = 0;  // number of samples M
  int band = 0;  // band limit N

  static GridParams make(int log2_size, int band);

  bool operator==(const GridParams&) const = default;
};

/// A function on the unit circle held in two synchronized forms: values at
/// the grid nodes z_j = exp(2*pi*i*j/M) and Fourier coefficients a_n for
/// n in [-N, N]. Coefficients outside the band are treated as zero; when a
/// construction drops measurable out-of-band energy the instance carries a
/// truncation flag instead of failing.
///
/// Instances are immutable values; every operation returns a new one.
class LaurentFunction {
 public:
  LaurentFunction() = default;

  static LaurentFunction zero(const GridParams& grid);
  static LaurentFunction constant(const GridParams& grid, Complex value);
  /// c * z^power; |power| must lie within the band.
  static LaurentFunction monomial(const GridParams& grid, int power,
                                  Complex scale = Complex(1.0, 0.0));
  /// coeffs has length 2*band+1 ordered a_{-N}, ..., a_{N}.
  static LaurentFunction from_coeffs(const GridParams& grid, const CVector& coeffs);
  static LaurentFunction from_samples(const GridParams& grid, const CVector& samples);

  const GridParams& grid() const { return grid_; }
  const CVector& samples() const { return samples_; }
  const CVector& coeffs() const { return coeffs_; }
  bool band_truncated() const { return truncated_; }

  /// Coefficient a_n; zero outside the band.
  Complex coeff(int n) const {
    if (n < -grid_.band || n > grid_.band) return Complex(0.0, 0.0);
    return coeffs_[n + grid_.band];
  }

  /// Grid node z_j.
  static Complex node(int size, int j);

 private:
  GridParams grid_;
  CVector samples_;
  CVector coeffs_;
  bool truncated_ = false;

  friend LaurentFunction multiply(const LaurentFunction&, const LaurentFunction&);
  friend LaurentFunction conj_j(const LaurentFunction&);
  friend LaurentFunction sharp(const LaurentFunction&);
  friend LaurentFunction project_h2(const LaurentFunction&);
  friend LaurentFunction operator+(const LaurentFunction&, const LaurentFunction&);
  friend LaurentFunction operator-(const LaurentFunction&, const LaurentFunction&);
  friend LaurentFunction operator*(Complex, const LaurentFunction&);
};

/// <f, g> = sum_n a_n conj(b_n); equals the circle integral of f conj(g)
/// for band-limited inputs. Throws ParameterError on mismatched grids.
Complex inner_product(const LaurentFunction& f, const LaurentFunction& g);

/// Quadrature route for the same inner product: (1/M) sum_j f(z_j) conj(g(z_j)).
Complex quadrature_inner(const LaurentFunction& f, const LaurentFunction& g);

double l2_norm(const LaurentFunction& f);

/// Pointwise product on samples; coefficients recomputed and re-banded.
/// Out-of-band energy sets the truncation flag on the result.
LaurentFunction multiply(const LaurentFunction& f, const LaurentFunction& g);

/// J f = conj(f): coefficients c_n = conj(a_{-n}), samples conjugated.
LaurentFunction conj_j(const LaurentFunction& f);

/// f#(z) = conj(f(conj(z))): coefficients c_n = conj(a_n).
LaurentFunction sharp(const LaurentFunction& f);

/// Analytic projection: zeroes every coefficient with n < 0.
LaurentFunction project_h2(const LaurentFunction& f);

LaurentFunction operator+(const LaurentFunction& f, const LaurentFunction& g);
LaurentFunction operator-(const LaurentFunction& f, const LaurentFunction& g);
LaurentFunction operator*(Complex scale, const LaurentFunction& f);

struct ResidualFlag {
  bool ok = false;
  double residual = 0.0;
};

/// Symmetry f(z) = f(conj(z)): residual = max_n |a_n - a_{-n}|.
ResidualFlag is_symmetric(const LaurentFunction& f, double tol);

/// residual = max_j ||f(z_j)| - 1|.
ResidualFlag is_unimodular(const LaurentFunction& f, double tol);

/// L2 norm of the coefficients with n < 0.
double negative_part_norm(const LaurentFunction& f);

/// Cached vector of grid nodes exp(2*pi*i*j/size), j = 0..size-1.
const CVector& grid_nodes(int size);

}  // namespace conjulab

#endif  // CONJULAB_FOURIER_HPP
