#include "conjulab/fourier.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <map>

namespace conjulab {
namespace {

// Relative out-of-band energy above which a result is flagged as truncated.
constexpr double kTruncationThreshold = 1e-10;

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

void require_same_grid(const LaurentFunction& f, const LaurentFunction& g) {
  if (!(f.grid() == g.grid()))
    throw ParameterError("grid parameters differ between operands");
}

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

// Full M-point spectrum (unnormalized DFT) -> banded coefficients plus the
// relative energy left outside the band.
void band_restrict(const CVector& spectrum, const GridParams& grid,
                   CVector& coeffs, double& out_ratio) {
  const int m = grid.size;
  const int n = grid.band;
  coeffs.resize(2 * n + 1);
  double in_band = 0.0, total = 0.0;
  for (int k = 0; k < m; ++k) total += std::norm(spectrum[k]);
  for (int idx = -n; idx <= n; ++idx) {
    const int bin = idx >= 0 ? idx : m + idx;
    coeffs[idx + n] = spectrum[bin] / double(m);
    in_band += std::norm(spectrum[bin]);
  }
  out_ratio = total > 0.0 ? std::sqrt(std::max(0.0, total - in_band) / total) : 0.0;
}

CVector synthesize(const GridParams& grid, const CVector& coeffs) {
  const int m = grid.size;
  const int n = grid.band;
  CVector spectrum = CVector::Zero(m);
  for (int idx = -n; idx <= n; ++idx) {
    const int bin = idx >= 0 ? idx : m + idx;
    spectrum[bin] = coeffs[idx + n] * double(m);
  }
  CVector samples(m);
  fft_engine().inv(samples, spectrum);
  return samples;
}

}  // namespace

GridParams GridParams::make(int log2_size, int band) {
  if (log2_size < 2 || log2_size > 24)
    throw ParameterError("grid log2 size out of range [2, 24]");
  GridParams g;
  g.size = 1 << log2_size;
  g.band = band;
  if (band < 1 || band > g.size / 2 - 1)
    throw ParameterError("band limit must satisfy 1 <= band <= size/2 - 1");
  return g;
}

Complex LaurentFunction::node(int size, int j) {
  const double t = 2.0 * kPi * double(j) / double(size);
  return Complex(std::cos(t), std::sin(t));
}

LaurentFunction LaurentFunction::zero(const GridParams& grid) {
  LaurentFunction f;
  f.grid_ = grid;
  f.samples_ = CVector::Zero(grid.size);
  f.coeffs_ = CVector::Zero(2 * grid.band + 1);
  return f;
}

LaurentFunction LaurentFunction::constant(const GridParams& grid, Complex value) {
  LaurentFunction f = zero(grid);
  f.samples_.setConstant(value);
  f.coeffs_[grid.band] = value;
  return f;
}

LaurentFunction LaurentFunction::monomial(const GridParams& grid, int power, Complex scale) {
  if (power < -grid.band || power > grid.band)
    throw ParameterError("monomial power outside the band limit");
  LaurentFunction f = zero(grid);
  f.coeffs_[power + grid.band] = scale;
  for (int j = 0; j < grid.size; ++j)
    f.samples_[j] = scale * std::polar(1.0, 2.0 * kPi * double(j) * double(power) / double(grid.size));
  return f;
}

LaurentFunction LaurentFunction::from_coeffs(const GridParams& grid, const CVector& coeffs) {
  if (!is_power_of_two(grid.size) || grid.band > grid.size / 2 - 1)
    throw ParameterError("invalid grid parameters");
  if (coeffs.size() != 2 * grid.band + 1)
    throw ParameterError("coefficient vector length must be 2*band + 1");
  LaurentFunction f;
  f.grid_ = grid;
  f.coeffs_ = coeffs;
  f.samples_ = synthesize(grid, coeffs);
  return f;
}

LaurentFunction LaurentFunction::from_samples(const GridParams& grid, const CVector& samples) {
  if (!is_power_of_two(grid.size) || grid.band > grid.size / 2 - 1)
    throw ParameterError("invalid grid parameters");
  if (samples.size() != grid.size)
    throw ParameterError("sample vector length must equal the grid size");
  LaurentFunction f;
  f.grid_ = grid;
  f.samples_ = samples;
  CVector spectrum(grid.size);
  CVector in = samples;
  fft_engine().fwd(spectrum, in);
  double out_ratio = 0.0;
  band_restrict(spectrum, grid, f.coeffs_, out_ratio);
  f.truncated_ = out_ratio > kTruncationThreshold;
  return f;
}

Complex inner_product(const LaurentFunction& f, const LaurentFunction& g) {
  require_same_grid(f, g);
  // Eigen's dot conjugates its left argument.
  return g.coeffs().dot(f.coeffs());
}

Complex quadrature_inner(const LaurentFunction& f, const LaurentFunction& g) {
  require_same_grid(f, g);
  return g.samples().dot(f.samples()) / double(f.grid().size);
}

double l2_norm(const LaurentFunction& f) { return f.coeffs().norm(); }

LaurentFunction multiply(const LaurentFunction& f, const LaurentFunction& g) {
  require_same_grid(f, g);
  CVector prod = f.samples().cwiseProduct(g.samples());
  LaurentFunction h = LaurentFunction::from_samples(f.grid(), prod);
  h.truncated_ = h.truncated_ || f.truncated_ || g.truncated_;
  return h;
}

LaurentFunction conj_j(const LaurentFunction& f) {
  LaurentFunction h = f;
  h.samples_ = f.samples().conjugate();
  const int n = f.grid().band;
  for (int idx = -n; idx <= n; ++idx)
    h.coeffs_[idx + n] = std::conj(f.coeffs()[-idx + n]);
  return h;
}

LaurentFunction sharp(const LaurentFunction& f) {
  LaurentFunction h = f;
  h.coeffs_ = f.coeffs().conjugate();
  const int m = f.grid().size;
  for (int j = 0; j < m; ++j)
    h.samples_[j] = std::conj(f.samples()[(m - j) % m]);
  return h;
}

LaurentFunction project_h2(const LaurentFunction& f) {
  LaurentFunction h = f;
  const int n = f.grid().band;
  bool changed = false;
  for (int idx = -n; idx < 0; ++idx) {
    if (h.coeffs_[idx + n] != Complex(0.0, 0.0)) changed = true;
    h.coeffs_[idx + n] = Complex(0.0, 0.0);
  }
  if (changed) h.samples_ = synthesize(f.grid(), h.coeffs_);
  return h;
}

LaurentFunction operator+(const LaurentFunction& f, const LaurentFunction& g) {
  require_same_grid(f, g);
  LaurentFunction h = f;
  h.samples_ += g.samples();
  h.coeffs_ += g.coeffs();
  h.truncated_ = f.band_truncated() || g.band_truncated();
  return h;
}

LaurentFunction operator-(const LaurentFunction& f, const LaurentFunction& g) {
  require_same_grid(f, g);
  LaurentFunction h = f;
  h.samples_ -= g.samples();
  h.coeffs_ -= g.coeffs();
  h.truncated_ = f.band_truncated() || g.band_truncated();
  return h;
}

LaurentFunction operator*(Complex scale, const LaurentFunction& f) {
  LaurentFunction h = f;
  h.samples_ *= scale;
  h.coeffs_ *= scale;
  return h;
}

ResidualFlag is_symmetric(const LaurentFunction& f, double tol) {
  const int n = f.grid().band;
  double residual = 0.0;
  for (int idx = 1; idx <= n; ++idx)
    residual = std::max(residual, std::abs(f.coeffs()[idx + n] - f.coeffs()[-idx + n]));
  return {residual < tol, residual};
}

ResidualFlag is_unimodular(const LaurentFunction& f, double tol) {
  double residual = 0.0;
  for (int j = 0; j < f.grid().size; ++j)
    residual = std::max(residual, std::abs(std::abs(f.samples()[j]) - 1.0));
  return {residual < tol, residual};
}

double negative_part_norm(const LaurentFunction& f) {
  const int n = f.grid().band;
  return f.coeffs().head(n).norm();
}

const CVector& grid_nodes(int size) {
  thread_local std::map<int, CVector> cache;
  auto it = cache.find(size);
  if (it == cache.end()) {
    CVector nodes(size);
    for (int j = 0; j < size; ++j) nodes[j] = LaurentFunction::node(size, j);
    it = cache.emplace(size, std::move(nodes)).first;
  }
  return it->second;
}

}  // namespace conjulab
