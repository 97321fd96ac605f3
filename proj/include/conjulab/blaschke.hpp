#ifndef CONJULAB_BLASCHKE_HPP
#define CONJULAB_BLASCHKE_HPP

#include <optional>
#include <vector>

#include "conjulab/fourier.hpp"
#include "conjulab/types.hpp"

namespace conjulab {

/// Tolerance used when matching zeros between two products. Inputs are
/// constructed, not measured, so matches are either exact or absent.
inline constexpr double kZeroPairingTol = 1e-9;

/// Largest admissible zero modulus for grid work; beyond it the Fourier
/// tail no longer decays fast enough for the configured band limits.
inline constexpr double kMaxGridZeroModulus = 0.8;

/// Finite Blaschke product: a unimodular constant lambda times normalized
/// factors over a multiset of zeros in the open unit disk,
///   factor(a, z) = z                              for a = 0,
///   factor(a, z) = (|a|/a) (a - z) / (1 - conj(a) z)   otherwise,
/// so that each factor is positive at z = 0. Zeros are kept sorted
/// lexicographically by (re, im); lambda is stored separately.
class BlaschkeProduct {
 public:
  /// The constant function 1.
  BlaschkeProduct() : lambda_(1.0, 0.0) {}
  explicit BlaschkeProduct(Complex lambda);
  BlaschkeProduct(Complex lambda, std::vector<Complex> zeros);

  /// z^degree.
  static BlaschkeProduct power_of_z(int degree);
  /// Single factor with zero a.
  static BlaschkeProduct factor(Complex a);

  Complex lambda() const { return lambda_; }
  const std::vector<Complex>& zeros() const { return zeros_; }
  int degree() const { return int(zeros_.size()); }
  bool is_constant() const { return zeros_.empty(); }

 private:
  Complex lambda_;
  std::vector<Complex> zeros_;  // sorted canonical order
};

/// One normalized factor.
Complex blaschke_factor(Complex a, Complex z);

/// Evaluate anywhere off the pole set {1/conj(a)}; throws ParameterError at
/// a pole.
Complex evaluate(const BlaschkeProduct& b, Complex z);

BlaschkeProduct multiply(const BlaschkeProduct& b1, const BlaschkeProduct& b2);

/// b1 / b2 as a multiset difference, or nullopt when the zeros of b2 are
/// not contained in those of b1. Never returns a partial quotient.
std::optional<BlaschkeProduct> divide(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                                      double tol = kZeroPairingTol);

/// Greatest common inner divisor: zero multiset intersection, lambda = 1.
BlaschkeProduct gcd(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                    double tol = kZeroPairingTol);

/// Zeros and lambda conjugated; satisfies evaluate(sharp(b), z) =
/// conj(evaluate(b, conj(z))).
BlaschkeProduct sharp(const BlaschkeProduct& b);

/// True when b1 divides b2 (zero multiset containment).
bool divides(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
             double tol = kZeroPairingTol);

struct UnimodularMatch {
  bool equal = false;
  Complex lambda;  // witness with b2 = lambda * b1 when equal
};

UnimodularMatch equal_up_to_unimodular(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                                       double tol = kZeroPairingTol);

/// Sampled boundary values as a LaurentFunction. Requires every zero to
/// satisfy |a| <= 0.8; otherwise throws PrecisionError carrying the band
/// that the offending zero would need.
LaurentFunction to_grid(const BlaschkeProduct& b, const GridParams& grid);

}  // namespace conjulab

#endif  // CONJULAB_BLASCHKE_HPP
