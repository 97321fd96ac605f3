#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "conjulab/registry.hpp"
#include "conjulab/sampling.hpp"
#include "conjulab/theorems.hpp"

using namespace conjulab;

namespace {

CheckContext default_ctx() { return CheckContext::from_config(RunConfig{}); }

double residual_of(const CheckReport& r, const std::string& name) {
  for (const auto& [n, v] : r.residuals)
    if (n == name) return v;
  FAIL("missing residual " << name);
  return 0.0;
}

bool same_zero_set(const BlaschkeProduct& b, std::vector<Complex> zeros) {
  if (int(zeros.size()) != b.degree()) return false;
  std::vector<bool> used(zeros.size(), false);
  for (Complex z : b.zeros()) {
    bool found = false;
    for (std::size_t i = 0; i < zeros.size(); ++i)
      if (!used[i] && std::abs(zeros[i] - z) < 1e-9) {
        used[i] = true;
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("construct_beta walks the gcd splitting") {
  // alpha = z^2, theta = z: delta = z, alpha1 = z, theta1 = 1, u = z, beta = z^2.
  const BlaschkeProduct beta =
      construct_beta(BlaschkeProduct::power_of_z(2), BlaschkeProduct::power_of_z(1));
  CHECK(same_zero_set(beta, {Complex(0.0, 0.0), Complex(0.0, 0.0)}));

  // Twin pair: delta = b_a, alpha1 = b_b, theta1 = b_conj(b) = b_b#, u = 1, beta = theta.
  const Complex a(0.0, 0.5), b(0.3, 0.2);
  const BlaschkeProduct alpha(Complex(1.0, 0.0), {a, b});
  const BlaschkeProduct theta(Complex(1.0, 0.0), {a, std::conj(b)});
  const BlaschkeProduct beta2 = construct_beta(alpha, theta);
  CHECK(equal_up_to_unimodular(beta2, theta).equal);

  // Self case: beta = theta up to a constant.
  Rng rng(51);
  const BlaschkeProduct r = random_blaschke(rng, 4, 0.75);
  CHECK(equal_up_to_unimodular(construct_beta(r, r), r).equal);
}

TEST_CASE("construct_beta refuses when the product condition fails") {
  CHECK_THROWS_AS((void)construct_beta(BlaschkeProduct::power_of_z(1),
                                       BlaschkeProduct::factor(Complex(0.5, 0.0))),
                  NotConstructible);
}

TEST_CASE("constructed beta solves the product equation on the grid") {
  const CheckContext ctx = default_ctx();
  Rng rng(52);
  for (int i = 0; i < 5; ++i) {
    const BlaschkeProduct alpha = random_blaschke(rng, rng.uniform_int(1, 5), 0.75);
    const auto betas = enumerate_betas(alpha);
    const BlaschkeProduct& pick =
        betas[std::size_t(rng.uniform_int(0, int(betas.size()) - 1))];
    std::vector<Complex> sub;
    for (Complex z : pick.zeros())
      if (rng.uniform() < 0.5) sub.push_back(z);
    if (sub.empty()) sub.push_back(pick.zeros()[0]);
    const BlaschkeProduct theta(rng.unit(), sub);

    const BlaschkeProduct beta = construct_beta(alpha, theta);
    CHECK(divides(theta, beta));
    CHECK(beta.degree() == alpha.degree());
    const LaurentFunction lhs = multiply(to_grid(beta, ctx.grid), to_grid(sharp(beta), ctx.grid));
    const LaurentFunction rhs =
        multiply(to_grid(alpha, ctx.grid), to_grid(sharp(alpha), ctx.grid));
    CHECK((lhs.samples() - rhs.samples()).cwiseAbs().maxCoeff() < 1e-9);
    // Membership in the enumerated solution set, up to a unimodular constant.
    bool found = false;
    for (const auto& cand : enumerate_betas(alpha))
      if (equal_up_to_unimodular(cand, beta).equal) found = true;
    CHECK(found);
  }
}

TEST_CASE("enumerate_betas: frozen small cases") {
  const auto z2 = enumerate_betas(BlaschkeProduct::power_of_z(2));
  REQUIRE(z2.size() == 1);
  CHECK(same_zero_set(z2[0], {Complex(0.0, 0.0), Complex(0.0, 0.0)}));

  // Distinct {a, b, conj a, conj b} splits into exactly four classes.
  const Complex a(0.0, 0.5), b(0.3, 0.2);
  const auto classes = enumerate_betas(BlaschkeProduct(Complex(1.0, 0.0), {a, b}));
  REQUIRE(classes.size() == 4);
  int matches = 0;
  for (const auto& expected :
       {std::vector<Complex>{a, b}, std::vector<Complex>{a, std::conj(b)},
        std::vector<Complex>{std::conj(a), b},
        std::vector<Complex>{std::conj(a), std::conj(b)}}) {
    for (const auto& c : classes)
      if (same_zero_set(c, expected)) ++matches;
  }
  CHECK(matches == 4);
}

TEST_CASE("symbol of the constructed sandwich is symmetric") {
  const CheckContext ctx = default_ctx();
  Rng rng(53);
  const BlaschkeProduct alpha = random_blaschke(rng, 3, 0.75);
  const BlaschkeProduct theta(rng.unit(), {alpha.zeros()[0]});
  const BlaschkeProduct beta = construct_beta(alpha, theta);
  const LaurentFunction psi =
      multiply(to_grid(beta, ctx.grid), conj_j(to_grid(sharp(alpha), ctx.grid)));
  CHECK(is_symmetric(psi, 1e-10).ok);
  CHECK(is_unimodular(psi, 1e-10).ok);
}

TEST_CASE("model map divisibility: hand cases") {
  const CheckContext ctx = default_ctx();
  // C_{z^2}(K_z) lands in K_{z^3}: chain z <= z^2 <= z^3 holds.
  const CheckReport ok = verify_model_map_divisibility(
      BlaschkeProduct::power_of_z(2), BlaschkeProduct(), BlaschkeProduct::power_of_z(1),
      BlaschkeProduct::power_of_z(3), ctx);
  CHECK(ok.pass);
  CHECK(ok.params["observed"]["divisibility_chain"].get<bool>());
  CHECK(ok.params["observed"]["leakage"].get<double>() < 1e-10);

  // beta = b_{0.5} fails z <= beta; the leakage must separate cleanly.
  const CheckReport bad = verify_model_map_divisibility(
      BlaschkeProduct::factor(Complex(0.5, 0.0)), BlaschkeProduct(),
      BlaschkeProduct::power_of_z(1), BlaschkeProduct::power_of_z(2), ctx);
  CHECK(bad.pass);
  CHECK(!bad.params["observed"]["divisibility_chain"].get<bool>());
  CHECK(bad.params["observed"]["leakage"].get<double>() > 1e-3);
}

TEST_CASE("model map divisibility: randomized equivalence") {
  const CheckContext ctx = default_ctx();
  Rng rng(54);
  for (int i = 0; i < 10; ++i) {
    const BlaschkeProduct gamma = random_blaschke(rng, rng.uniform_int(0, 1), 0.7);
    const BlaschkeProduct alpha = random_blaschke(rng, rng.uniform_int(1, 2), 0.7);
    const BlaschkeProduct extra = random_blaschke(rng, rng.uniform_int(0, 2), 0.7);
    const BlaschkeProduct theta = multiply(alpha, extra);
    std::vector<Complex> dz;
    for (Complex z : extra.zeros())
      if (rng.uniform() < 0.5) dz.push_back(z);
    const BlaschkeProduct beta =
        multiply(multiply(gamma, alpha), BlaschkeProduct(rng.unit(), dz));
    CHECK(verify_model_map_divisibility(beta, gamma, alpha, theta, ctx).pass);
  }
}

TEST_CASE("commuting model maps: J* case and symmetric-quotient rigidity") {
  const CheckContext ctx = default_ctx();
  Rng rng(55);
  const BlaschkeProduct alpha = random_blaschke(rng, 3, 0.75);

  // gamma = 1, beta = alpha, theta = alpha#: C = J*, contains with tiny leakage.
  const CheckReport jstar_case = verify_commuting_model_map_form(
      alpha, sharp(alpha), alpha, BlaschkeProduct(), ctx);
  CHECK(jstar_case.pass);
  CHECK(residual_of(jstar_case, "containment_leakage") < 1e-10);
  CHECK(jstar_case.params["observed"]["involution_residual"].get<double>() < 1e-10);

  // beta = alpha * b_{0.5i}: the quotient is not symmetric, C is not an
  // involution, and the check records the agreement of both verdicts.
  const BlaschkeProduct m = BlaschkeProduct::factor(Complex(0.0, 0.5));
  const BlaschkeProduct beta = multiply(alpha, m);
  const CheckReport skew =
      verify_commuting_model_map_form(alpha, sharp(beta), beta, BlaschkeProduct(), ctx);
  CHECK(skew.pass);
  CHECK(skew.params["observed"]["involution_residual"].get<double>() > 1e-3);

  // gamma = z, alpha = z, beta = z^2, theta# = z^2: containment only.
  const CheckReport shifted = verify_commuting_model_map_form(
      BlaschkeProduct::power_of_z(1), BlaschkeProduct::power_of_z(2),
      BlaschkeProduct::power_of_z(2), BlaschkeProduct::power_of_z(1), ctx);
  CHECK(shifted.pass);
  CHECK(residual_of(shifted, "containment_leakage") < 1e-10);

  // Violated divisibility precondition is refused.
  CHECK_THROWS_AS((void)verify_commuting_model_map_form(
                      alpha, sharp(alpha), BlaschkeProduct::factor(Complex(0.1, 0.1)),
                      BlaschkeProduct(), ctx),
                  ParameterError);
}

TEST_CASE("sandwich involution triple agreement") {
  const CheckContext ctx = default_ctx();
  Rng rng(56);
  const BlaschkeProduct alpha = random_blaschke(rng, 3, 0.75);

  const CheckReport self_case = check_sandwich_involution(alpha, alpha, ctx);
  CHECK(self_case.pass);
  CHECK(self_case.params["observed"]["involution_residual"].get<double>() < 1e-9);

  const CheckReport twin = check_sandwich_involution(
      BlaschkeProduct(Complex(1.0, 0.0), {Complex(0.0, 0.5), Complex(0.3, 0.2)}),
      BlaschkeProduct(Complex(1.0, 0.0), {Complex(0.0, 0.5), Complex(0.3, -0.2)}), ctx);
  CHECK(twin.pass);
  CHECK(twin.params["observed"]["involution_residual"].get<double>() < 1e-9);

  const CheckReport mismatch = check_sandwich_involution(
      BlaschkeProduct::power_of_z(1), BlaschkeProduct::factor(Complex(0.5, 0.0)), ctx);
  CHECK(mismatch.pass);  // verdicts agree: all three residuals are large
  CHECK(mismatch.params["observed"]["involution_residual"].get<double>() > 1e-3);
  CHECK(mismatch.params["observed"]["product_grid_residual"].get<double>() > 1e-3);
  CHECK(mismatch.params["observed"]["symbol_symmetry_residual"].get<double>() > 1e-3);
}

TEST_CASE("shift-invariant mapping: witness branch") {
  const CheckContext ctx = default_ctx();
  const CheckReport lifted = verify_shift_invariant_mapping(
      BlaschkeProduct::power_of_z(2), BlaschkeProduct::power_of_z(1), ctx);
  CHECK(lifted.pass);
  CHECK(residual_of(lifted, "membership_beta_max") < 1e-9);
  CHECK(residual_of(lifted, "membership_theta_max") < 1e-9);

  // theta = alpha reproduces the self-preserving conjugation C_alpha J* C_alpha.
  Rng rng(57);
  const BlaschkeProduct alpha = random_blaschke(rng, 3, 0.75);
  CHECK(verify_shift_invariant_mapping(alpha, alpha, ctx).pass);
}

TEST_CASE("shift-invariant mapping onto the sharp side recovers lambda J*") {
  const CheckContext ctx = default_ctx();
  // C(theta H^2) in theta# H^2 forces beta ~ theta# and psi constant.
  const BlaschkeProduct theta(Complex(1.0, 0.0), {Complex(0.2, 0.6)});
  const BlaschkeProduct beta = construct_beta(theta, sharp(theta));
  CHECK(equal_up_to_unimodular(beta, sharp(theta)).equal);
  const LaurentFunction psi =
      multiply(to_grid(beta, ctx.grid), conj_j(to_grid(sharp(theta), ctx.grid)));
  const LaurentFunction mean = LaurentFunction::constant(ctx.grid, psi.coeff(0));
  CHECK(l2_norm(psi - mean) < 1e-9);  // C = lambda J*
  CHECK(verify_shift_invariant_mapping(theta, sharp(theta), ctx).pass);
}

TEST_CASE("shift-invariant mapping: obstruction branch") {
  const CheckContext ctx = default_ctx();
  const CheckReport blocked = verify_shift_invariant_mapping(
      BlaschkeProduct::power_of_z(1), BlaschkeProduct::factor(Complex(0.5, 0.0)), ctx);
  CHECK(blocked.pass);
  CHECK(residual_of(blocked, "not_constructible_defect") == 0.0);
  CHECK(blocked.params["observed"]["min_candidate_membership_residual"].get<double>() > 1e-3);
}

TEST_CASE("shift-invariant mapping accepts constant inner functions") {
  const CheckContext ctx = default_ctx();
  // alpha H^2 = H^2 with theta nonconstant: obstruction branch.
  const CheckReport blocked = verify_shift_invariant_mapping(
      BlaschkeProduct(), BlaschkeProduct::factor(Complex(0.4, 0.0)), ctx);
  CHECK(blocked.pass);
  // theta constant: every candidate lands inside theta H^2 = H^2.
  const CheckReport trivial = verify_shift_invariant_mapping(
      BlaschkeProduct::power_of_z(1), BlaschkeProduct(), ctx);
  CHECK(trivial.pass);
}

TEST_CASE("twin model space example") {
  const CheckContext ctx = default_ctx();
  const CheckReport r = verify_twin_model_space_example(Complex(0.0, 0.5), Complex(0.3, 0.2), ctx);
  CHECK(r.pass);
  CHECK(residual_of(r, "product_grid_residual") < 1e-10);
  CHECK(residual_of(r, "divisibility_defects") == 0.0);
  CHECK(residual_of(r, "mapping_defect") == 0.0);

  CHECK_THROWS_AS(
      (void)verify_twin_model_space_example(Complex(0.0, 0.5), Complex(0.0, 0.5), ctx),
      ParameterError);
  CHECK_THROWS_AS(
      (void)verify_twin_model_space_example(Complex(0.5, 0.0), Complex(0.3, 0.2), ctx),
      ParameterError);
}

TEST_CASE("obstruction demo exceeds the floor and rejects vacuous runs") {
  const CheckContext ctx = default_ctx();
  const CheckReport r = demo_mz_conjugation_obstruction(
      BlaschkeProduct::power_of_z(1), BlaschkeProduct::power_of_z(1), 50, 7, ctx);
  CHECK(r.pass);
  CHECK(r.params["observed"]["min_residual_generic"].get<double>() > 1e-3);
  CHECK(r.params["observed"]["min_residual_proof_family"].get<double>() > 1e-3);

  CHECK_THROWS_AS((void)demo_mz_conjugation_obstruction(BlaschkeProduct::power_of_z(1),
                                                        BlaschkeProduct::power_of_z(1), 0, 7,
                                                        ctx),
                  ParameterError);
}

TEST_CASE("lambda J* intertwines the truncated shifts") {
  const CheckContext ctx = default_ctx();
  const CheckReport trivial =
      verify_shift_intertwining_on_model_space(BlaschkeProduct::power_of_z(2),
                                               Complex(1.0, 0.0), ctx);
  CHECK(trivial.pass);
  CHECK(residual_of(trivial, "symbol_match_residual") < 1e-10);

  const BlaschkeProduct theta(Complex(1.0, 0.0), {Complex(0.5, 0.0), Complex(-0.3, 0.0)});
  const CheckReport rotated =
      verify_shift_intertwining_on_model_space(theta, Complex(0.0, 1.0), ctx);
  CHECK(rotated.pass);

  // Asymmetric theta: the containment genuinely targets K_theta#.
  const CheckReport skew = verify_shift_intertwining_on_model_space(
      BlaschkeProduct::factor(Complex(0.0, 0.5)), Complex(1.0, 0.0), ctx);
  CHECK(skew.pass);
  CHECK(skew.params["observed"]["self_target_leakage"].get<double>() > 1e-3);

  CHECK_THROWS_AS((void)verify_shift_intertwining_on_model_space(
                      theta, Complex(2.0, 0.0), ctx),
                  ParameterError);
}

TEST_CASE("self-sharp rigidity accepts lambda J* and rejects the rest") {
  const CheckContext ctx = default_ctx();
  CHECK(verify_selfsharp_commuting_rigidity(BlaschkeProduct::power_of_z(3), ctx).pass);
  CHECK(verify_selfsharp_commuting_rigidity(
            BlaschkeProduct(Complex(1.0, 0.0), {Complex(0.5, 0.0), Complex(-0.5, 0.0)}), ctx)
            .pass);
  CHECK_THROWS_AS((void)verify_selfsharp_commuting_rigidity(
                      BlaschkeProduct::factor(Complex(0.0, 0.5)), ctx),
                  ParameterError);
}

TEST_CASE("TTO conjugation form: constants and refusals") {
  const CheckContext ctx = default_ctx();
  const LaurentFunction lambda = LaurentFunction::constant(ctx.grid, Complex(0.0, 1.0));
  const CheckReport monomial_case =
      verify_tto_conjugation_form(BlaschkeProduct::power_of_z(3), lambda, ctx);
  CHECK(monomial_case.pass);
  CHECK(residual_of(monomial_case, "extraction_mod_theta_residual") < 1e-8);

  Rng rng(58);
  const BlaschkeProduct theta = random_blaschke(rng, 4, 0.8);
  const CheckReport generic = verify_tto_conjugation_form(
      theta, LaurentFunction::constant(ctx.grid, rng.unit()), ctx);
  CHECK(generic.pass);
  CHECK(residual_of(generic, "extraction_mod_theta_residual") < 1e-8);

  // A strict contraction is not unitary: refused with the residual reported.
  const LaurentFunction contraction = to_grid(BlaschkeProduct::factor(Complex(0.5, 0.0)), ctx.grid);
  CHECK_THROWS_AS((void)verify_tto_conjugation_form(theta, contraction, ctx), ParameterError);
}

TEST_CASE("report invariant: pass iff all residuals below tolerance") {
  const CheckContext ctx = default_ctx();
  const CheckReport r = check_sandwich_involution(
      BlaschkeProduct::power_of_z(1), BlaschkeProduct::power_of_z(1), ctx);
  bool all_below = true;
  for (const auto& [_, v] : r.residuals) all_below = all_below && v < r.tolerance;
  CHECK(r.pass == all_below);
  const Json j = report_to_json(r);
  CHECK(j.contains("check_id"));
  CHECK(j.contains("params"));
  CHECK(j.contains("residuals"));
  CHECK(j.contains("tolerance"));
  CHECK(j.contains("pass"));
}

TEST_CASE("registry exposes at least 25 deterministic checks") {
  CHECK(check_registry().size() >= 25);
  CHECK(find_check("beta_enumeration_oracle") != nullptr);
  CHECK(find_check("nonexistent_check") == nullptr);

  const CheckContext ctx = default_ctx();
  const CheckDef* def = find_check("fourier_roundtrip");
  REQUIRE(def != nullptr);
  const Json a = report_to_json(def->run(ctx));
  const Json b = report_to_json(def->run(ctx));
  CHECK(a.dump() == b.dump());
}
