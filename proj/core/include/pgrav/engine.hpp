// Scenario orchestration and the verification check batteries. Every battery
// is also reachable from the command line tool; the acceptance tests call the
// same functions, so the CLI, the tests, and the manifest all report one set
// of numbers.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pgrav/constants.hpp"
#include "pgrav/scenario.hpp"

namespace pgrav {

// Default seed for the randomized property batteries (golden-ratio mix
// constant); overridable per run for fuzzing.
inline constexpr std::uint64_t kDefaultSeed = 0x9e3779b97f4a7c15ull;

// Pass bounds used by the check batteries. "default" holds the documented
// acceptance bounds; "strict" tightens everything that has numerical
// headroom. Values are pinned here, not in config files.
struct ToleranceProfile {
  std::string name = "default";
  double newton_rel = 1e-6;       // inverse-square law, relative
  double bracket_rel = 1e-2;      // kinetic correction vs v^2/2, relative
  double earth_power_rel = 5e-2;  // |P| vs 5.2e8 W, relative
  double larmor_rel = 1e-8;       // quadrature vs closed form, relative
  double flux_rel = 1e-3;         // sphere flux vs closed form, relative
  double wep_rel = 1e-10;         // mass-independence of trajectories
  double clock_abs = 1e-12;       // line element vs 1 - 2 gamma m/r
  double algebra_exact = 1e-12;   // pure-algebra residuals
  double algebra_fd = 1e-6;       // finite-difference-assisted residuals
  double pde_rel = 1e-6;          // wave-equation residual vs field scale/r^2
  double drift_abs = 1e-9;        // |u.u + 1| over a long RK4 run
};

// Profiles by name ("default", "strict"); ValidationError otherwise.
ToleranceProfile tolerance_profile(std::string_view name);

struct CheckResult {
  std::string name;
  bool passed = false;
  double observed = 0.0;  // measured deviation, same scale as bound
  double bound = 0.0;
  std::string detail;     // semicolon-separated context, no commas
};

// ----- check batteries -------------------------------------------------
// Inverse-square law from the retarded fields, three decades of source mass
// and radius.
std::vector<CheckResult> newton_limit_checks(const ToleranceProfile& tol,
                                             const Constants& consts = {});
// Kinetic enhancement of the interaction bracket at Earth orbital speed
// against the closed-form energy oracle.
std::vector<CheckResult> kinetic_bracket_checks(const ToleranceProfile& tol,
                                                const Constants& consts = {});
// Earth circular-orbit radiated power from SI inputs.
std::vector<CheckResult> earth_power_checks(const ToleranceProfile& tol);
// Solid-angle quadrature of the angular power vs the closed-form total.
std::vector<CheckResult> larmor_quadrature_checks(const ToleranceProfile& tol,
                                                  const Constants& consts = {});
// Wave-zone sphere flux vs the closed-form total for a circular orbit.
std::vector<CheckResult> flux_consistency_checks(const ToleranceProfile& tol,
                                                 const Constants& consts = {});
// Trajectory mass-independence in a fixed external field.
std::vector<CheckResult> wep_checks(const ToleranceProfile& tol,
                                    const Constants& consts = {});
// Static-source line element vs the closed-form weak-field metric factor.
std::vector<CheckResult> clock_rate_checks(const ToleranceProfile& tol,
                                           const Constants& consts = {});
// Randomized gauge-algebra properties: Jacobi, antisymmetry, closure on the
// potentials, covariance of the strengths, derivative-path agreement.
std::vector<CheckResult> algebra_property_checks(const ToleranceProfile& tol,
                                                 std::uint64_t seed,
                                                 const Constants& consts = {});
// Wave-equation residuals of the retarded potentials at random events.
std::vector<CheckResult> pde_residual_checks(const ToleranceProfile& tol,
                                             std::uint64_t seed,
                                             const Constants& consts = {});
// Four-velocity normalization drift over a long unrenormalized RK4 orbit.
std::vector<CheckResult> integrator_drift_checks(const ToleranceProfile& tol,
                                                 const Constants& consts = {});

// Every battery above, concatenated in the order listed.
std::vector<CheckResult> all_checks(const ToleranceProfile& tol, std::uint64_t seed,
                                    const Constants& consts = {});

// ----- scenario runs ----------------------------------------------------
struct RunOptions {
  ToleranceProfile profile;
  std::uint64_t seed = kDefaultSeed;
};

struct RunResult {
  std::vector<std::filesystem::path> files;  // outputs in order, manifest last
  int checks_failed = 0;  // failures from "checks" outputs, 0 otherwise
};

// Execute a validated scenario: integrate test particles where needed, write
// the requested CSV outputs under out_dir, and finish with a flat key=value
// manifest (config hash, tolerances, defaults, versions; no timestamps, so
// identical configs give byte-identical output trees).
RunResult run(const Scenario& sc, const std::filesystem::path& out_dir,
              const RunOptions& opt = {});

}  // namespace pgrav
