#include "conjulab/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace conjulab {
namespace {

constexpr double kLambdaTol = 1e-14;

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

void canonicalize(std::vector<Complex>& zeros) {
  std::sort(zeros.begin(), zeros.end(), lex_less);
}

// Greedy pairing: for each needle zero pick the nearest unused haystack zero
// within tol. Returns indices into haystack, or nullopt if any needle is
// unmatched.
std::optional<std::vector<int>> pair_zeros(const std::vector<Complex>& needles,
                                           const std::vector<Complex>& haystack,
                                           double tol) {
  std::vector<bool> used(haystack.size(), false);
  std::vector<int> match(needles.size(), -1);
  for (std::size_t i = 0; i < needles.size(); ++i) {
    int best = -1;
    double best_dist = tol;
    for (std::size_t j = 0; j < haystack.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(needles[i] - haystack[j]);
      if (d <= best_dist) {
        best = int(j);
        best_dist = d;
      }
    }
    if (best < 0) return std::nullopt;
    used[best] = true;
    match[i] = best;
  }
  return match;
}

}  // namespace

BlaschkeProduct::BlaschkeProduct(Complex lambda) : lambda_(lambda) {
  if (std::abs(std::abs(lambda) - 1.0) > kLambdaTol)
    throw ParameterError("lambda must be unimodular");
}

BlaschkeProduct::BlaschkeProduct(Complex lambda, std::vector<Complex> zeros)
    : lambda_(lambda), zeros_(std::move(zeros)) {
  if (std::abs(std::abs(lambda) - 1.0) > kLambdaTol)
    throw ParameterError("lambda must be unimodular");
  for (Complex a : zeros_)
    if (std::abs(a) >= 1.0) throw ParameterError("Blaschke zeros must lie in the open disk");
  canonicalize(zeros_);
}

BlaschkeProduct BlaschkeProduct::power_of_z(int degree) {
  if (degree < 0) throw ParameterError("degree must be nonnegative");
  return BlaschkeProduct(Complex(1.0, 0.0), std::vector<Complex>(degree, Complex(0.0, 0.0)));
}

BlaschkeProduct BlaschkeProduct::factor(Complex a) {
  return BlaschkeProduct(Complex(1.0, 0.0), {a});
}

Complex blaschke_factor(Complex a, Complex z) {
  if (a == Complex(0.0, 0.0)) return z;
  const Complex denom = Complex(1.0, 0.0) - std::conj(a) * z;
  if (std::abs(denom) < 1e-12) throw ParameterError("evaluation at a Blaschke pole");
  return (std::abs(a) / a) * (a - z) / denom;
}

Complex evaluate(const BlaschkeProduct& b, Complex z) {
  Complex value = b.lambda();
  for (Complex a : b.zeros()) value *= blaschke_factor(a, z);
  return value;
}

BlaschkeProduct multiply(const BlaschkeProduct& b1, const BlaschkeProduct& b2) {
  std::vector<Complex> zeros = b1.zeros();
  zeros.insert(zeros.end(), b2.zeros().begin(), b2.zeros().end());
  return BlaschkeProduct(b1.lambda() * b2.lambda(), std::move(zeros));
}

std::optional<BlaschkeProduct> divide(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                                      double tol) {
  if (b2.degree() > b1.degree()) return std::nullopt;
  auto match = pair_zeros(b2.zeros(), b1.zeros(), tol);
  if (!match) return std::nullopt;
  std::vector<bool> removed(b1.zeros().size(), false);
  for (int j : *match) removed[j] = true;
  std::vector<Complex> zeros;
  for (std::size_t j = 0; j < b1.zeros().size(); ++j)
    if (!removed[j]) zeros.push_back(b1.zeros()[j]);
  return BlaschkeProduct(b1.lambda() / b2.lambda(), std::move(zeros));
}

BlaschkeProduct gcd(const BlaschkeProduct& b1, const BlaschkeProduct& b2, double tol) {
  const auto& small = b1.degree() <= b2.degree() ? b1 : b2;
  const auto& large = b1.degree() <= b2.degree() ? b2 : b1;
  std::vector<bool> used(large.zeros().size(), false);
  std::vector<Complex> common;
  for (Complex a : small.zeros()) {
    int best = -1;
    double best_dist = tol;
    for (std::size_t j = 0; j < large.zeros().size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(a - large.zeros()[j]);
      if (d <= best_dist) {
        best = int(j);
        best_dist = d;
      }
    }
    if (best >= 0) {
      used[best] = true;
      common.push_back(a);
    }
  }
  return BlaschkeProduct(Complex(1.0, 0.0), std::move(common));
}

BlaschkeProduct sharp(const BlaschkeProduct& b) {
  std::vector<Complex> zeros;
  zeros.reserve(b.zeros().size());
  for (Complex a : b.zeros()) zeros.push_back(std::conj(a));
  return BlaschkeProduct(std::conj(b.lambda()), std::move(zeros));
}

bool divides(const BlaschkeProduct& b1, const BlaschkeProduct& b2, double tol) {
  return divide(b2, b1, tol).has_value();
}

UnimodularMatch equal_up_to_unimodular(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                                       double tol) {
  if (b1.degree() != b2.degree()) return {false, Complex(0.0, 0.0)};
  if (!pair_zeros(b1.zeros(), b2.zeros(), tol)) return {false, Complex(0.0, 0.0)};
  return {true, b2.lambda() / b1.lambda()};
}

LaurentFunction to_grid(const BlaschkeProduct& b, const GridParams& grid) {
  double worst = 0.0;
  for (Complex a : b.zeros()) worst = std::max(worst, std::abs(a));
  if (worst > kMaxGridZeroModulus + 1e-12) {
    // Tail of a_n decays like worst^n; report the band a 1e-16 tail would need.
    const int required = int(std::ceil(std::log(1e-16) / std::log(worst)));
    std::ostringstream msg;
    msg << "zero modulus " << worst << " exceeds " << kMaxGridZeroModulus
        << "; representing it would need band >= " << required;
    throw PrecisionError(msg.str());
  }
  CVector samples(grid.size);
  for (int j = 0; j < grid.size; ++j)
    samples[j] = evaluate(b, LaurentFunction::node(grid.size, j));
  return LaurentFunction::from_samples(grid, samples);
}

}  // namespace conjulab
