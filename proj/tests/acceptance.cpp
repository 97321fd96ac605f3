// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Usage: acceptance [path-to-cli-binary]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "conjulab/registry.hpp"
#include "conjulab/theorems.hpp"

using namespace conjulab;

namespace {

int g_failures = 0;

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void criterion(int number, const std::string& label, bool ok, double seconds) {
  std::printf("[%s] criterion %2d: %-58s (%.2f s)\n", ok ? "PASS" : "FAIL", number,
              label.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

CheckReport run_check(const std::string& id, const CheckContext& ctx) {
  const CheckDef* def = find_check(id);
  if (def == nullptr) throw std::logic_error("missing check: " + id);
  return def->run(ctx);
}

bool all_pass(const std::vector<std::string>& ids, const CheckContext& ctx,
              std::string* detail = nullptr) {
  bool ok = true;
  for (const auto& id : ids) {
    const CheckReport r = run_check(id, ctx);
    if (!r.pass) {
      ok = false;
      if (detail) *detail += " " + id;
    }
  }
  return ok;
}

double observed(const CheckReport& r, const std::string& key) {
  return r.params.at("observed").at(key).get<double>();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  RunConfig config;  // pinned defaults: grid 4096/1024, 1e-10/1e-9/1e-3, seed 42
  const CheckContext ctx = CheckContext::from_config(config);

  {  // 1. Conjugation axioms for the five families, under 5 seconds.
    const double t0 = now_seconds();
    const bool ok = all_pass({"conj_axioms_j", "conj_axioms_jstar", "conj_axioms_ctheta",
                              "conj_axioms_mpsi_jstar", "conj_axioms_sandwich"},
                             ctx);
    const double dt = now_seconds() - t0;
    criterion(1, "conjugation axioms (J, J*, C_theta, M_psi J*, sandwich)", ok && dt < 5.0,
              dt);
  }

  {  // 2. Symbol recovery round-trips and the index-swap counterexample.
    const double t0 = now_seconds();
    const bool ok = all_pass({"symbol_recovery_mz_conjugation", "symbol_recovery_mz_commuting",
                              "ckl_classified_neither"},
                             ctx);
    criterion(2, "symbol recovery classifies both families; swaps are neither", ok,
              now_seconds() - t0);
  }

  {  // 3. H^2 preservation: constants only, and never for M_psi J.
    const double t0 = now_seconds();
    const bool ok = all_pass(
        {"h2_preservation_forces_constant", "no_h2_preserving_mz_conjugation"}, ctx);
    criterion(3, "H^2 preservation forces lambda J*; M_psi J never preserves", ok,
              now_seconds() - t0);
  }

  {  // 4. Divisibility sweep with clean separation.
    const double t0 = now_seconds();
    const CheckReport r = run_check("model_map_divisibility_sweep", ctx);
    const bool ok = r.pass && observed(r, "satisfied_leakage_max") < 1e-9 &&
                    observed(r, "violating_leakage_min") >= 1e-3;
    criterion(4, "model-map containment iff divisibility chain (100 tuples)", ok,
              now_seconds() - t0);
  }

  {  // 5. J* between model spaces and the symmetric-quotient rigidity.
    const double t0 = now_seconds();
    const bool ok = all_pass({"jstar_maps_model_spaces", "commuting_model_map_forms",
                              "commuting_model_map_rigidity"},
                             ctx);
    criterion(5, "J* maps K_alpha to K_alpha#; nonconstant quotients rejected", ok,
              now_seconds() - t0);
  }

  {  // 6. Involution <-> product equality <-> symbol symmetry, 100 pairs.
    const double t0 = now_seconds();
    const CheckReport r = run_check("sandwich_involution_agreement", ctx);
    const bool ok = r.pass && r.params.at("observed").at("cases").get<int>() >= 100;
    criterion(6, "sandwich involution triple agreement (100 pairs)", ok, now_seconds() - t0);
  }

  {  // 7. Constructive witness and the enumeration oracle.
    const double t0 = now_seconds();
    const bool ok = all_pass({"shift_invariant_witness", "shift_invariant_obstruction",
                              "beta_enumeration_oracle"},
                             ctx);
    criterion(7, "witness construction iff product divisibility; enum = oracle", ok,
              now_seconds() - t0);
  }

  {  // 8. The canonical twin pair.
    const double t0 = now_seconds();
    const CheckReport r = run_check("twin_model_space_example", ctx);
    criterion(8, "twin pair: equal products, all four divisibilities fail", r.pass,
              now_seconds() - t0);
  }

  {  // 9. Truncated Toeplitz suite.
    const double t0 = now_seconds();
    const bool ok = all_pass({"tto_c_symmetry", "truncated_shift_intertwining",
                              "selfsharp_rigidity", "tto_conjugation_form_roundtrip"},
                             ctx);
    criterion(9, "TTO suite: C_theta symmetry, lambda J*, symbol extraction", ok,
              now_seconds() - t0);
  }

  {  // 10. Full CLI run: exit 0, deterministic bytes, under 60 s.
    const double t0 = now_seconds();
    bool ok = false;
    if (!cli.empty()) {
      const std::string r1 = "/tmp/conjulab_acceptance_1.json";
      const std::string r2 = "/tmp/conjulab_acceptance_2.json";
      const double w0 = now_seconds();
      const int s1 = std::system(
          (cli + " verify-all --seed 42 --report " + r1 + " 2>/dev/null").c_str());
      const double wall = now_seconds() - w0;
      const int s2 = std::system(
          (cli + " verify-all --seed 42 --report " + r2 + " 2>/dev/null").c_str());
      const std::string bytes1 = slurp(r1);
      ok = WEXITSTATUS(s1) == 0 && WEXITSTATUS(s2) == 0 && wall < 60.0 && !bytes1.empty() &&
           bytes1 == slurp(r2);
      if (ok) {  // suite census: at least 25 distinct check ids in the report
        const Json arr = Json::parse(bytes1);
        std::vector<std::string> ids;
        for (const auto& entry : arr) ids.push_back(entry.at("check_id").get<std::string>());
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        ok = ids.size() >= 25;
      }
      if (WEXITSTATUS(s1) != 0) std::fprintf(stderr, "  verify-all exited %d\n", WEXITSTATUS(s1));
      if (wall >= 60.0) std::fprintf(stderr, "  verify-all took %.1f s\n", wall);
    } else {
      std::fprintf(stderr, "  no CLI path given\n");
    }
    criterion(10, "verify-all: exit 0, byte-stable report, wall under 60 s", ok,
              now_seconds() - t0);
  }

  if (g_failures > 0) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
