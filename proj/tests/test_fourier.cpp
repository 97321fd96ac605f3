#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conjulab/blaschke.hpp"
#include "conjulab/fourier.hpp"
#include "conjulab/sampling.hpp"

using namespace conjulab;

namespace {

const GridParams kGrid = GridParams::make(12, 1024);

LaurentFunction mono(int k, Complex c = Complex(1.0, 0.0)) {
  return LaurentFunction::monomial(kGrid, k, c);
}

}  // namespace

TEST_CASE("inner products of monomials") {
  CHECK(std::abs(inner_product(mono(1), mono(0))) < 1e-14);
  const LaurentFunction one_plus_z = mono(0) + mono(1);
  CHECK(inner_product(one_plus_z, one_plus_z).real() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(inner_product(one_plus_z, one_plus_z).imag()) < 1e-14);
}

TEST_CASE("Blaschke factor has unit norm: quadrature oracle") {
  const LaurentFunction b = to_grid(BlaschkeProduct::factor(Complex(0.5, 0.0)), kGrid);
  // Independent oracle: plain grid quadrature of |b|^2.
  Complex quad(0.0, 0.0);
  for (int j = 0; j < kGrid.size; ++j) quad += b.samples()[j] * std::conj(b.samples()[j]);
  quad /= double(kGrid.size);
  CHECK(quad.real() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(inner_product(b, b) - quad) < 1e-12);
  CHECK(std::abs(inner_product(b, b) - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("inner product refuses mismatched grids") {
  const GridParams other = GridParams::make(11, 512);
  CHECK_THROWS_AS((void)inner_product(mono(0), LaurentFunction::monomial(other, 0)),
                  ParameterError);
}

TEST_CASE("multiply: polynomial identities") {
  const LaurentFunction p = multiply(mono(0) + mono(1), mono(0) - mono(1));
  CHECK(std::abs(p.coeff(0) - Complex(1.0, 0.0)) < 1e-13);
  CHECK(std::abs(p.coeff(1)) < 1e-13);
  CHECK(std::abs(p.coeff(2) + Complex(1.0, 0.0)) < 1e-13);

  Rng rng(11);
  const LaurentFunction f = random_probe(rng, kGrid, 40);
  CHECK(l2_norm(multiply(f, mono(0)) - f) < 1e-13);

  const LaurentFunction unit = multiply(mono(1), mono(-1));
  CHECK(l2_norm(unit - mono(0)) < 1e-13);
}

TEST_CASE("multiply records band truncation instead of failing") {
  const LaurentFunction h = multiply(mono(600), mono(600));  // true product z^1200 leaves the band
  CHECK(h.band_truncated());
  const LaurentFunction ok = multiply(mono(100), mono(200));
  CHECK(!ok.band_truncated());
  CHECK(std::abs(ok.coeff(300) - Complex(1.0, 0.0)) < 1e-13);
}

TEST_CASE("conj_j reflects and conjugates coefficients") {
  const LaurentFunction f = mono(0, Complex(0.0, 1.0)) + mono(1, Complex(2.0, 0.0));
  const LaurentFunction jf = conj_j(f);
  CHECK(std::abs(jf.coeff(0) - Complex(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(jf.coeff(-1) - Complex(2.0, 0.0)) < 1e-15);
  CHECK(std::abs(jf.coeff(1)) < 1e-15);

  for (int k : {-3, 0, 5}) CHECK(l2_norm(conj_j(mono(k)) - mono(-k)) < 1e-15);

  Rng rng(12);
  const LaurentFunction g = random_probe(rng, kGrid, 100);
  const LaurentFunction jj = conj_j(conj_j(g));
  CHECK((jj.coeffs() - g.coeffs()).cwiseAbs().maxCoeff() == 0.0);  // exact involution
  CHECK((jj.samples() - g.samples()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sharp conjugates coefficients in place") {
  const LaurentFunction fs = sharp(mono(1, Complex(0.0, 1.0)));  // (iz)# = -iz
  CHECK(std::abs(fs.coeff(1) - Complex(0.0, -1.0)) < 1e-15);

  Rng rng(13);
  const LaurentFunction g = random_probe(rng, kGrid, 100);
  const LaurentFunction ss = sharp(sharp(g));
  CHECK((ss.coeffs() - g.coeffs()).cwiseAbs().maxCoeff() == 0.0);

  const LaurentFunction a = random_probe(rng, kGrid, 30);
  const LaurentFunction b = random_probe(rng, kGrid, 30);
  CHECK(l2_norm(sharp(multiply(a, b)) - multiply(sharp(a), sharp(b))) < 1e-13);
}

TEST_CASE("project_h2 zeroes the co-analytic part") {
  CHECK(l2_norm(project_h2(mono(1) + mono(-1)) - mono(1)) < 1e-14);

  Rng rng(14);
  const LaurentFunction g = random_probe(rng, kGrid, 80);
  const LaurentFunction pg = project_h2(g);
  const LaurentFunction ppg = project_h2(pg);
  CHECK((ppg.coeffs() - pg.coeffs()).cwiseAbs().maxCoeff() == 0.0);  // idempotent

  // Self-adjointness: <Pf, g> = <f, Pg> on random pairs.
  for (int i = 0; i < 5; ++i) {
    const LaurentFunction u = random_probe(rng, kGrid, 60);
    const LaurentFunction v = random_probe(rng, kGrid, 60);
    CHECK(std::abs(inner_product(project_h2(u), v) - inner_product(u, project_h2(v))) < 1e-12);
  }
}

TEST_CASE("symmetry predicate") {
  CHECK(is_symmetric(mono(1) + mono(-1), 1e-10).ok);
  const auto bad = is_symmetric(mono(1) - mono(-1), 1e-10);
  CHECK(!bad.ok);
  CHECK(bad.residual == doctest::Approx(2.0));
}

TEST_CASE("unimodularity predicate") {
  CHECK(is_unimodular(mono(3), 1e-12).ok);
  CHECK(is_unimodular(to_grid(BlaschkeProduct::factor(Complex(0.3, 0.4)), kGrid), 1e-12).ok);
  CHECK(!is_unimodular(mono(0) + mono(1), 1e-12).ok);
}

TEST_CASE("isometry law for J and sharp on a random corpus") {
  Rng rng(15);
  for (int i = 0; i < 10; ++i) {
    const LaurentFunction f = random_probe(rng, kGrid, 200);
    const LaurentFunction g = random_probe(rng, kGrid, 200);
    const Complex target = inner_product(g, f);
    CHECK(std::abs(inner_product(conj_j(f), conj_j(g)) - target) < 1e-12);
    CHECK(std::abs(inner_product(sharp(f), sharp(g)) - target) < 1e-12);
  }
}

TEST_CASE("multiplication by z commutes with sharp and intertwines with J") {
  Rng rng(16);
  const LaurentFunction z = mono(1);
  const LaurentFunction zbar = mono(-1);
  for (int i = 0; i < 5; ++i) {
    const LaurentFunction f = random_probe(rng, kGrid, 100);
    CHECK((sharp(multiply(z, f)).coeffs() - multiply(z, sharp(f)).coeffs())
              .cwiseAbs()
              .maxCoeff() < 1e-13);
    CHECK((conj_j(multiply(z, f)).coeffs() - multiply(zbar, conj_j(f)).coeffs())
              .cwiseAbs()
              .maxCoeff() < 1e-13);
  }
}

TEST_CASE("nonconstant inner functions are far from symmetric") {
  Rng rng(17);
  for (int i = 0; i < 10; ++i) {
    const BlaschkeProduct b = random_blaschke(rng, rng.uniform_int(1, 6), 0.8);
    CHECK(is_symmetric(to_grid(b, kGrid), 1e-9).residual > 1e-3);
  }
}

TEST_CASE("Parseval: coefficient sums equal grid quadrature") {
  Rng rng(18);
  for (int i = 0; i < 6; ++i) {
    const LaurentFunction f = random_probe(rng, kGrid, 500);
    const LaurentFunction g = random_probe(rng, kGrid, 500);
    CHECK(std::abs(inner_product(f, g) - quadrature_inner(f, g)) < 1e-12);
  }
}

TEST_CASE("round trip between samples and coefficients") {
  Rng rng(19);
  const LaurentFunction f = random_probe(rng, kGrid, kGrid.band);
  const LaurentFunction g = LaurentFunction::from_samples(kGrid, f.samples());
  CHECK((f.coeffs() - g.coeffs()).cwiseAbs().maxCoeff() < 1e-13);
  const LaurentFunction h = LaurentFunction::from_coeffs(kGrid, g.coeffs());
  CHECK((h.samples() - f.samples()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("grid parameter validation") {
  CHECK_THROWS_AS((void)GridParams::make(12, 2048), ParameterError);
  CHECK_THROWS_AS((void)GridParams::make(12, 0), ParameterError);
  CHECK_THROWS_AS((void)LaurentFunction::monomial(kGrid, 2000), ParameterError);
}
