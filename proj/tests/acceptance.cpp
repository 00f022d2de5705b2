// Acceptance gate: runs the ten verification batteries at the default
// tolerance profile, each under a pinned wall-clock budget that is part of
// the pass condition. One [PASS]/[FAIL] line per criterion; the exit status
// is the number of failed criteria, so the suite can run per criterion or as
// one gate.
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "pgrav/engine.hpp"

namespace {

using pgrav::CheckResult;
using pgrav::ToleranceProfile;

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<std::vector<CheckResult>(const ToleranceProfile&, std::uint64_t)> battery;
};

std::vector<Criterion> criteria() {
  return {
      {1, "newton_limit", 1.0,
       [](const ToleranceProfile& t, std::uint64_t) { return pgrav::newton_limit_checks(t); }},
      {2, "kinetic_bracket", 1.0,
       [](const ToleranceProfile& t, std::uint64_t) { return pgrav::kinetic_bracket_checks(t); }},
      {3, "earth_power", 1.0,
       [](const ToleranceProfile& t, std::uint64_t) { return pgrav::earth_power_checks(t); }},
      {4, "larmor_quadrature", 10.0,
       [](const ToleranceProfile& t, std::uint64_t) { return pgrav::larmor_quadrature_checks(t); }},
      {5, "flux_consistency", 60.0,
       [](const ToleranceProfile& t, std::uint64_t) { return pgrav::flux_consistency_checks(t); }},
      {6, "wep", 10.0,
       [](const ToleranceProfile& t, std::uint64_t) { return pgrav::wep_checks(t); }},
      {7, "clock_rate", 1.0,
       [](const ToleranceProfile& t, std::uint64_t) { return pgrav::clock_rate_checks(t); }},
      {8, "algebra_property", 30.0,
       [](const ToleranceProfile& t, std::uint64_t s) {
         return pgrav::algebra_property_checks(t, s);
       }},
      {9, "pde_residual", 10.0,
       [](const ToleranceProfile& t, std::uint64_t s) { return pgrav::pde_residual_checks(t, s); }},
      {10, "integrator_drift", 10.0,
       [](const ToleranceProfile& t, std::uint64_t) { return pgrav::integrator_drift_checks(t); }},
  };
}

int usage(const char* argv0) {
  std::fprintf(stderr,
               "usage: %s [--criterion N] [--profile NAME] [--seed S]\n"
               "  N in 1..10 runs one criterion; default runs all ten.\n",
               argv0);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  int selected = 0;  // 0 = all
  std::string profile_name = "default";
  std::uint64_t seed = pgrav::kDefaultSeed;

  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    const auto next = [&]() -> const char* {
      if (i + 1 >= argc) return nullptr;
      return argv[++i];
    };
    if (arg == "--criterion") {
      const char* v = next();
      if (v == nullptr) return usage(argv[0]);
      selected = std::atoi(v);
      if (selected < 1 || selected > 10) return usage(argv[0]);
    } else if (arg == "--profile") {
      const char* v = next();
      if (v == nullptr) return usage(argv[0]);
      profile_name = v;
    } else if (arg == "--seed") {
      const char* v = next();
      if (v == nullptr) return usage(argv[0]);
      seed = std::strtoull(v, nullptr, 10);
    } else {
      return usage(argv[0]);
    }
  }

  ToleranceProfile tol;
  try {
    tol = pgrav::tolerance_profile(profile_name);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  int failed = 0;
  for (const Criterion& c : criteria()) {
    if (selected != 0 && c.id != selected) continue;

    const auto start = std::chrono::steady_clock::now();
    std::vector<CheckResult> checks;
    std::string error;
    try {
      checks = c.battery(tol, seed);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::size_t passed = 0;
    double worst = 0.0;  // largest observed/bound ratio across the battery
    for (const CheckResult& r : checks) {
      if (r.passed) ++passed;
      if (r.bound > 0.0) worst = std::max(worst, r.observed / r.bound);
    }
    const bool in_budget = elapsed <= c.budget_seconds;
    const bool ok = error.empty() && !checks.empty() && passed == checks.size() && in_budget;

    std::printf("[%s] criterion %d %-18s checks=%zu/%zu worst=%.3e time=%.2fs budget=%.0fs\n",
                ok ? "PASS" : "FAIL", c.id, c.name, passed, checks.size(), worst, elapsed,
                c.budget_seconds);
    if (!error.empty()) {
      std::printf("       error: %s\n", error.c_str());
    }
    if (!in_budget) {
      std::printf("       over budget: %.2fs > %.0fs\n", elapsed, c.budget_seconds);
    }
    for (const CheckResult& r : checks) {
      if (!r.passed) {
        std::printf("       %s observed=%.6e bound=%.6e (%s)\n", r.name.c_str(), r.observed,
                    r.bound, r.detail.c_str());
      }
    }
    if (!ok) ++failed;
  }
  return failed;
}
