// Command line front end: scenario runs plus the named verification
// batteries, each printing one PASS/FAIL line per check.

#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pgrav/engine.hpp"
#include "pgrav/errors.hpp"
#include "pgrav/format.hpp"
#include "pgrav/scenario.hpp"

namespace {

using pgrav::CheckResult;
using pgrav::Constants;
using pgrav::ToleranceProfile;

int report(const std::vector<CheckResult>& rows) {
  int failed = 0;
  for (const CheckResult& r : rows) {
    if (!r.passed) {
      ++failed;
    }
    std::printf("[%s] %s observed=%s bound=%s (%s)\n", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), pgrav::format_double(r.observed).c_str(),
                pgrav::format_double(r.bound).c_str(), r.detail.c_str());
  }
  std::printf("%d/%zu checks passed\n", static_cast<int>(rows.size()) - failed,
              rows.size());
  return failed == 0 ? 0 : 1;
}

struct CommonOptions {
  std::string profile = "default";
  std::uint64_t seed = pgrav::kDefaultSeed;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--profile", opt.profile, "Tolerance profile: default or strict")
      ->check(CLI::IsMember({"default", "strict"}));
  cmd->add_option("--seed", opt.seed, "Seed for the randomized property checks");
}

using Battery =
    std::function<std::vector<CheckResult>(const ToleranceProfile&, std::uint64_t)>;

void add_battery(CLI::App& app, CommonOptions& opt, int& exit_code,
                 const char* name, const char* help, Battery battery) {
  CLI::App* cmd = app.add_subcommand(name, help);
  add_common(cmd, opt);
  cmd->callback([&opt, &exit_code, battery = std::move(battery)] {
    exit_code = report(battery(pgrav::tolerance_profile(opt.profile), opt.seed));
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauge-gravity laboratory: retarded fields of point sources, "
               "relativistic trajectories, radiation and metric diagnostics"};
  app.require_subcommand(1);

  CommonOptions opt;
  int exit_code = 0;
  const Constants consts{};

  std::string scenario_path;
  std::string out_dir = "out";
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run a scenario file and write its outputs plus manifest.txt");
  simulate->add_option("--scenario", scenario_path, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--out", out_dir, "Output directory");
  add_common(simulate, opt);
  simulate->callback([&] {
    const pgrav::Scenario sc = pgrav::load_scenario(scenario_path);
    pgrav::RunOptions ro;
    ro.profile = pgrav::tolerance_profile(opt.profile);
    ro.seed = opt.seed;
    const pgrav::RunResult res = pgrav::run(sc, out_dir, ro);
    for (const auto& f : res.files) {
      std::printf("wrote %s\n", f.string().c_str());
    }
    if (res.checks_failed > 0) {
      std::printf("%d checks failed\n", res.checks_failed);
      exit_code = 1;
    }
  });

  add_battery(app, opt, exit_code, "newton-check",
              "Inverse-square limit of a static source and the kinetic bracket "
              "deviation of the orbiting Earth",
              [&](const ToleranceProfile& tol, std::uint64_t) {
                auto rows = pgrav::newton_limit_checks(tol, consts);
                for (auto& r : pgrav::kinetic_bracket_checks(tol, consts)) {
                  rows.push_back(std::move(r));
                }
                return rows;
              });
  add_battery(app, opt, exit_code, "earth-power",
              "Radiated power of the Earth-Sun orbit in SI units",
              [&](const ToleranceProfile& tol, std::uint64_t) {
                return pgrav::earth_power_checks(tol);
              });
  add_battery(app, opt, exit_code, "radiation",
              "Angular quadrature against closed-form totals and the wave-zone "
              "sphere flux",
              [&](const ToleranceProfile& tol, std::uint64_t) {
                auto rows = pgrav::larmor_quadrature_checks(tol, consts);
                for (auto& r : pgrav::flux_consistency_checks(tol, consts)) {
                  rows.push_back(std::move(r));
                }
                return rows;
              });
  add_battery(app, opt, exit_code, "wep-check",
              "Mass independence of trajectories and four-velocity "
              "normalization drift",
              [&](const ToleranceProfile& tol, std::uint64_t) {
                auto rows = pgrav::wep_checks(tol, consts);
                for (auto& r : pgrav::integrator_drift_checks(tol, consts)) {
                  rows.push_back(std::move(r));
                }
                return rows;
              });
  add_battery(app, opt, exit_code, "geometry",
              "Static weak-field clock factor against 1 - 2 Gamma M / r",
              [&](const ToleranceProfile& tol, std::uint64_t) {
                return pgrav::clock_rate_checks(tol, consts);
              });
  add_battery(app, opt, exit_code, "algebra-check",
              "Randomized gauge-algebra properties and retarded-potential "
              "wave-equation residuals",
              [&](const ToleranceProfile& tol, std::uint64_t seed) {
                auto rows = pgrav::algebra_property_checks(tol, seed, consts);
                for (auto& r : pgrav::pde_residual_checks(tol, seed, consts)) {
                  rows.push_back(std::move(r));
                }
                return rows;
              });
  add_battery(app, opt, exit_code, "checks", "Run every verification battery",
              [&](const ToleranceProfile& tol, std::uint64_t seed) {
                return pgrav::all_checks(tol, seed, consts);
              });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return exit_code;
}
