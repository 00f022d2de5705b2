// Scenario configuration: schema-versioned JSON in, validated geometrized
// data out. Internal quantities are always geometrized (G = c = 1); an "si"
// unit_system converts at load time and never leaks outward.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgrav/dynamics.hpp"
#include "pgrav/fourvec.hpp"

namespace pgrav {

enum class ParticleRole { source, test, both };

enum class OutputKind { trajectory, fields_on_grid, radiation, geometry, checks };

struct ParticleSpec {
  double mass = 1.0;  // geometrized after load
  Vec3 position{};
  Vec3 velocity{};  // coordinate velocity, |v| < 1 after conversion
  IdentificationMode identification = IdentificationMode::dynamic;
  ParticleRole role = ParticleRole::source;
  // Frozen-mode charges; filled with the rest-frame defaults when absent.
  std::optional<FourVector> p_grav;
  std::optional<AntisymTensor> m_grav;  // six pair components 01,02,03,12,13,23
};

// One requested output artifact. Fields beyond (kind, stride, path) only
// apply to the kinds noted; the loader fills defaults and echoes them.
struct OutputSpec {
  OutputKind kind = OutputKind::trajectory;
  int stride = 1;        // trajectory: emit every stride-th step
  std::string path;      // relative to the run's output directory
  double r_min = 0.0;    // fields-on-grid, geometry: radial grid bounds
  double r_max = 0.0;
  int count = 0;         // fields-on-grid, geometry: grid size
  double at_time = 0.0;  // fields-on-grid, radiation: evaluation time
  int n_theta = 64;      // radiation: quadrature resolution
  int n_phi = 128;
  double flux_radius = 0.0;  // radiation: optional flux sphere (0 = skip)
};

struct Scenario {
  int schema = 1;
  std::string name;
  std::string unit_system = "geometrized";  // "geometrized" | "si"
  std::vector<ParticleSpec> particles;
  IntegratorConfig integrator;
  double duration = 1.0;  // coordinate time span, geometrized
  std::vector<OutputSpec> outputs;
  // Every default the loader filled, as (key, value) text; the run manifest
  // echoes these verbatim.
  std::vector<std::pair<std::string, std::string>> defaults_applied;
};

// Parse and validate scenario text. `origin` names the source (file path or
// "<inline>") for error messages. ParseError carries line/field context;
// ValidationError names the violated invariant.
Scenario parse_scenario(const std::string& text, const std::string& origin);

// Same, reading from a file; ParseError if the file cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

// Deterministic canonical re-serialization (sorted keys, round-trip floats);
// the run manifest hashes this.
std::string canonical_dump(const Scenario& sc);

std::string_view to_string(ParticleRole role);
std::string_view to_string(OutputKind kind);

}  // namespace pgrav
