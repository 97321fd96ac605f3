#include "conjulab/sampling.hpp"

#include <cmath>

namespace conjulab {

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw ParameterError("empty integer range");
  const std::uint64_t span = std::uint64_t(hi - lo) + 1;
  return lo + int(engine_() % span);
}

Complex Rng::unit() {
  const double t = 2.0 * kPi * uniform();
  return Complex(std::cos(t), std::sin(t));
}

Complex Rng::disk(double radius) {
  const double r = radius * std::sqrt(uniform());
  const double t = 2.0 * kPi * uniform();
  return Complex(r * std::cos(t), r * std::sin(t));
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) {
  // FNV-1a over the tag, then splitmix finalization mixed with the base.
  std::uint64_t h = 14695981039346656037ULL;
  for (char c : tag) {
    h ^= std::uint64_t(static_cast<unsigned char>(c));
    h *= 1099511628211ULL;
  }
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL + h;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

BlaschkeProduct random_blaschke(Rng& rng, int degree, double radius, bool random_lambda) {
  std::vector<Complex> zeros;
  zeros.reserve(std::size_t(degree));
  for (int i = 0; i < degree; ++i) zeros.push_back(rng.disk(radius));
  const Complex lambda = random_lambda ? rng.unit() : Complex(1.0, 0.0);
  return BlaschkeProduct(lambda, std::move(zeros));
}

LaurentFunction random_probe(Rng& rng, const GridParams& grid, int band) {
  if (band > grid.band) throw ParameterError("probe band exceeds the grid band");
  CVector coeffs = CVector::Zero(2 * grid.band + 1);
  for (int n = -band; n <= band; ++n)
    coeffs[n + grid.band] = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  coeffs /= coeffs.norm();
  return LaurentFunction::from_coeffs(grid, coeffs);
}

LaurentFunction random_analytic_probe(Rng& rng, const GridParams& grid, int band) {
  if (band > grid.band) throw ParameterError("probe band exceeds the grid band");
  CVector coeffs = CVector::Zero(2 * grid.band + 1);
  for (int n = 0; n <= band; ++n)
    coeffs[n + grid.band] = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  coeffs /= coeffs.norm();
  return LaurentFunction::from_coeffs(grid, coeffs);
}

LaurentFunction random_unimodular(Rng& rng, const GridParams& grid) {
  // t(z) = 2 Re(c1 z + c2 z^2), |c1| in [0.4, 1.2] keeps the first negative
  // harmonic of exp(i t) bounded away from zero.
  const Complex c1 = std::polar(rng.uniform(0.4, 1.2), 2.0 * kPi * rng.uniform());
  const Complex c2 = std::polar(rng.uniform(0.0, 0.5), 2.0 * kPi * rng.uniform());
  const CVector& nodes = grid_nodes(grid.size);
  CVector samples(grid.size);
  for (int j = 0; j < grid.size; ++j) {
    const Complex z = nodes[j];
    const double t = 2.0 * (c1 * z + c2 * z * z).real();
    samples[j] = Complex(std::cos(t), std::sin(t));
  }
  return LaurentFunction::from_samples(grid, samples);
}

}  // namespace conjulab
