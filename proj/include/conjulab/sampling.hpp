#ifndef CONJULAB_SAMPLING_HPP
#define CONJULAB_SAMPLING_HPP

#include <cstdint>
#include <random>
#include <string_view>

#include "conjulab/blaschke.hpp"
#include "conjulab/fourier.hpp"

namespace conjulab {

/// Deterministic RNG wrapper; the bit-to-double mapping is fixed so seeded
/// corpora reproduce across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi);  // inclusive bounds
  Complex unit();                   // |z| = 1
  Complex disk(double radius);      // |z| < radius, uniform by area

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Stable per-tag seed stream: same (base, tag) always yields the same seed.
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag);

/// Zeros drawn in |a| <= radius. Blaschke products that feed operator-window
/// matrices should use radius <= 0.7 so symbol tails die inside the margin;
/// grid-level work tolerates the full 0.8 contract.
BlaschkeProduct random_blaschke(Rng& rng, int degree, double radius,
                                bool random_lambda = true);

/// Unit-norm two-sided probe supported on |n| <= band.
LaurentFunction random_probe(Rng& rng, const GridParams& grid, int band);

/// Unit-norm analytic probe supported on 0 <= n <= band.
LaurentFunction random_analytic_probe(Rng& rng, const GridParams& grid, int band);

/// Genuinely two-sided unimodular sample exp(i t) for a random real
/// trigonometric polynomial t with a nondegenerate first harmonic. Such
/// functions are never inner, so they exercise the negative-frequency side.
LaurentFunction random_unimodular(Rng& rng, const GridParams& grid);

}  // namespace conjulab

#endif  // CONJULAB_SAMPLING_HPP
