// Batch driver for the certification suite: runs registered checks over
// seeded corpora and emits machine-readable reports.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "conjulab/registry.hpp"
#include "conjulab/serialize.hpp"
#include "conjulab/theorems.hpp"

namespace {

using conjulab::CheckContext;
using conjulab::CheckReport;
using conjulab::Json;
using conjulab::RunConfig;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Arguments that look like JSON are taken inline; anything else is a path.
Json load_json_argument(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] != '{' && arg[0] != '[') {
    std::ifstream in(arg);
    if (!in) throw conjulab::ParameterError("cannot open file: " + arg);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw conjulab::ParameterError(std::string("invalid JSON: ") + e.what());
  }
}

void emit(const Json& j, const std::string& report_path) {
  const std::string text = j.dump(2) + "\n";
  if (report_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw conjulab::ParameterError("cannot write report file: " + report_path);
    out << text;
  }
}

// A check that throws (e.g. a grid too coarse for its corpus) becomes a
// failed report instead of aborting the suite.
CheckReport guarded_run(const conjulab::CheckDef& def, const CheckContext& ctx) {
  try {
    return def.run(ctx);
  } catch (const std::exception& e) {
    CheckReport report;
    report.check_id = def.id;
    report.params["error"] = e.what();
    report.add_residual("aborted", 1.0);
    report.tolerance = 0.0;
    report.pass = false;
    return report;
  }
}

int run_verify_all(const CheckContext& ctx, const std::string& report_path) {
  Json reports = Json::array();
  bool all_pass = true;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& def : conjulab::check_registry()) {
    const auto c0 = std::chrono::steady_clock::now();
    const CheckReport report = guarded_run(def, ctx);
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
    reports.push_back(conjulab::report_to_json(report));
    all_pass = all_pass && report.pass;
    std::cerr << (report.pass ? "[ok]   " : "[FAIL] ") << def.id << "  ("
              << dt << " s)\n";
  }
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << (all_pass ? "all checks passed" : "some checks FAILED") << " in " << total
            << " s\n";
  emit(reports, report_path);
  return all_pass ? kExitPass : kExitFail;
}

int run_single_check(const CheckContext& ctx, const std::string& id,
                     const std::string& report_path) {
  const conjulab::CheckDef* def = conjulab::find_check(id);
  if (def == nullptr) throw conjulab::ParameterError("unknown check id: " + id);
  const CheckReport report = guarded_run(*def, ctx);
  emit(conjulab::report_to_json(report), report_path);
  return report.pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conjulab: certification suite for conjugations on the circle"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path;
  std::string report_path;
  std::optional<std::uint64_t> seed_flag;
  bool list_checks = false;
  std::string check_id_flag;

  app.add_option("--config", config_path, "RunConfig JSON file");
  app.add_option("--report", report_path, "write the report JSON here (default: stdout)");
  app.add_option("--seed", seed_flag, "seed override (fallback: CONJULAB_SEED)");
  app.add_option("--check", check_id_flag, "run a single check by id");
  app.add_flag("--list-checks", list_checks, "list registered check ids and exit");

  auto* cmd_verify = app.add_subcommand("verify-all", "run the full certification suite");

  auto* cmd_check = app.add_subcommand("check", "run a single check by id");
  std::string check_id_pos;
  cmd_check->add_option("id", check_id_pos, "check id")->required();

  auto* cmd_beta = app.add_subcommand("construct-beta",
                                      "construct beta for the shift-invariant mapping");
  std::string beta_alpha, beta_theta;
  cmd_beta->add_option("alpha", beta_alpha, "alpha as JSON (inline or file)")->required();
  cmd_beta->add_option("theta", beta_theta, "theta as JSON (inline or file)")->required();

  auto* cmd_enum = app.add_subcommand("enumerate-betas",
                                      "list all beta with beta beta# = alpha alpha#");
  std::string enum_alpha;
  cmd_enum->add_option("alpha", enum_alpha, "alpha as JSON (inline or file)")->required();

  auto* cmd_example = app.add_subcommand("example55",
                                         "twin model-space pair b_a b_b vs b_a b_conj(b)");
  std::string example_a, example_b;
  cmd_example->add_option("a", example_a, "first zero, e.g. 0.5i")->required();
  cmd_example->add_option("b", example_b, "second zero, e.g. 0.3+0.2i")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (list_checks) {
      for (const auto& def : conjulab::check_registry())
        std::cout << def.id << "  -  " << def.summary << "\n";
      return kExitPass;
    }

    RunConfig config;
    bool config_has_seed = false;
    if (!config_path.empty()) {
      const Json j = load_json_argument(config_path);
      config = conjulab::config_from_json(j);
      config_has_seed = j.is_object() && j.contains("seed");
    }
    if (seed_flag.has_value()) {
      config.seed = *seed_flag;
    } else if (!config_has_seed) {
      if (const char* env = std::getenv("CONJULAB_SEED"))
        config.seed = std::strtoull(env, nullptr, 10);
    }
    config.validate();
    const CheckContext ctx = CheckContext::from_config(config);

    if (cmd_beta->parsed()) {
      const auto alpha = conjulab::blaschke_from_json(load_json_argument(beta_alpha));
      const auto theta = conjulab::blaschke_from_json(load_json_argument(beta_theta));
      try {
        const auto beta = conjulab::construct_beta(alpha, theta);
        emit(conjulab::blaschke_to_json(beta), report_path);
        return kExitPass;
      } catch (const conjulab::NotConstructible& e) {
        emit(Json{{"error", "not-constructible"}, {"detail", e.what()}}, report_path);
        return kExitFail;
      }
    }

    if (cmd_enum->parsed()) {
      const auto alpha = conjulab::blaschke_from_json(load_json_argument(enum_alpha));
      Json out = Json::array();
      for (const auto& beta : conjulab::enumerate_betas(alpha))
        out.push_back(conjulab::blaschke_to_json(beta));
      emit(out, report_path);
      return kExitPass;
    }

    if (cmd_example->parsed()) {
      const auto a = conjulab::parse_complex(example_a);
      const auto b = conjulab::parse_complex(example_b);
      const CheckReport report = conjulab::verify_twin_model_space_example(a, b, ctx);
      emit(conjulab::report_to_json(report), report_path);
      return report.pass ? kExitPass : kExitFail;
    }

    if (cmd_check->parsed()) return run_single_check(ctx, check_id_pos, report_path);
    if (!check_id_flag.empty()) return run_single_check(ctx, check_id_flag, report_path);
    if (cmd_verify->parsed()) return run_verify_all(ctx, report_path);

    std::cerr << app.help() << "\n";
    return kExitUsage;
  } catch (const conjulab::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const conjulab::PrecisionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFail;
  }
}
