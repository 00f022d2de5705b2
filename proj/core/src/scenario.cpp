#include "pgrav/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>

#include "json.hpp"

#include "pgrav/errors.hpp"
#include "pgrav/format.hpp"
#include "pgrav/units.hpp"

namespace pgrav {

namespace {

using nlohmann::json;

int line_of_byte(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
    }
  }
  return line;
}

[[noreturn]] void bad_field(const std::string& path, const std::string& what) {
  throw ParseError("scenario field '" + path + "': " + what);
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const auto& k : known) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ValidationError("unknown scenario field '" + path + "." + key + "'");
    }
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    return nullptr;
  }
  return &*it;
}

double require_number(const json& v, const std::string& path) {
  if (!v.is_number()) {
    bad_field(path, "expected a number");
  }
  return v.get<double>();
}

int require_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) {
    bad_field(path, "expected an integer");
  }
  return v.get<int>();
}

bool require_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) {
    bad_field(path, "expected a boolean");
  }
  return v.get<bool>();
}

std::string require_string(const json& v, const std::string& path) {
  if (!v.is_string()) {
    bad_field(path, "expected a string");
  }
  return v.get<std::string>();
}

Vec3 require_vec3(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) {
    bad_field(path, "expected an array of 3 numbers");
  }
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    out[i] = require_number(v[i], path + "[" + std::to_string(i) + "]");
  }
  return out;
}

IdentificationMode parse_identification(const std::string& s, const std::string& path) {
  if (s == "dynamic") return IdentificationMode::dynamic;
  if (s == "frozen") return IdentificationMode::frozen;
  bad_field(path, "expected \"dynamic\" or \"frozen\", got \"" + s + "\"");
}

ParticleRole parse_role(const std::string& s, const std::string& path) {
  if (s == "source") return ParticleRole::source;
  if (s == "test") return ParticleRole::test;
  if (s == "both") return ParticleRole::both;
  bad_field(path, "expected \"source\", \"test\", or \"both\", got \"" + s + "\"");
}

OutputKind parse_kind(const std::string& s, const std::string& path) {
  if (s == "trajectory") return OutputKind::trajectory;
  if (s == "fields-on-grid") return OutputKind::fields_on_grid;
  if (s == "radiation") return OutputKind::radiation;
  if (s == "geometry") return OutputKind::geometry;
  if (s == "checks") return OutputKind::checks;
  bad_field(path, "expected one of trajectory, fields-on-grid, radiation, geometry, checks");
}

IntegratorConfig::Method parse_method(const std::string& s, const std::string& path) {
  if (s == "rk4") return IntegratorConfig::Method::rk4;
  if (s == "rk45") return IntegratorConfig::Method::rk45;
  bad_field(path, "expected \"rk4\" or \"rk45\", got \"" + s + "\"");
}

// Relative, no parent escapes: outputs stay inside the run directory.
void validate_output_path(const std::string& p, const std::string& path) {
  if (p.empty()) {
    bad_field(path, "must be a non-empty relative path");
  }
  const std::filesystem::path fp(p);
  if (fp.is_absolute()) {
    throw ValidationError("output path '" + p + "' must be relative to the run directory");
  }
  for (const auto& part : fp) {
    if (part == "..") {
      throw ValidationError("output path '" + p + "' must not contain '..'");
    }
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ":" + std::to_string(line_of_byte(text, e.byte)) +
                     ": " + e.what());
  }
  if (!root.is_object()) {
    throw ParseError(origin + ": top level must be an object");
  }
  reject_unknown_keys(root, "scenario",
                      {"schema", "name", "unit_system", "particles", "integrator",
                       "duration", "outputs"});

  Scenario sc;
  const auto note_default = [&sc](const std::string& key, const std::string& value) {
    sc.defaults_applied.emplace_back(key, value);
  };

  if (const json* v = find(root, "schema")) {
    sc.schema = require_int(*v, "schema");
  } else {
    note_default("schema", "1");
  }
  if (sc.schema != 1) {
    throw ValidationError("unsupported scenario schema version " +
                          std::to_string(sc.schema) + " (this build reads 1)");
  }

  if (const json* v = find(root, "name")) {
    sc.name = require_string(*v, "name");
  }
  if (sc.name.empty()) {
    throw ValidationError("scenario requires a non-empty 'name'");
  }

  if (const json* v = find(root, "unit_system")) {
    sc.unit_system = require_string(*v, "unit_system");
  } else {
    note_default("unit_system", "geometrized");
  }
  if (sc.unit_system != "geometrized" && sc.unit_system != "si") {
    throw ValidationError("unit_system must be \"geometrized\" or \"si\", got \"" +
                          sc.unit_system + "\"");
  }
  const bool si_input = sc.unit_system == "si";
  const UnitSystem units;
  const auto to_geo = [&](double value, Dimension dim) {
    return si_input ? convert_units(value, dim, Direction::si_to_geometrized, units)
                    : value;
  };

  const json* particles = find(root, "particles");
  if (particles == nullptr || !particles->is_array() || particles->empty()) {
    throw ValidationError("scenario requires a non-empty 'particles' array");
  }
  for (std::size_t i = 0; i < particles->size(); ++i) {
    const json& pj = (*particles)[i];
    const std::string path = "particles[" + std::to_string(i) + "]";
    if (!pj.is_object()) {
      bad_field(path, "expected an object");
    }
    reject_unknown_keys(pj, path,
                        {"mass", "position", "velocity", "identification", "role",
                         "p_grav", "m_grav"});
    ParticleSpec p;

    const json* mv = find(pj, "mass");
    if (mv == nullptr) {
      bad_field(path + ".mass", "required");
    }
    p.mass = to_geo(require_number(*mv, path + ".mass"), Dimension::mass);
    if (!(p.mass > 0.0)) {
      throw ValidationError(path + ".mass must be positive");
    }

    if (const json* v = find(pj, "position")) {
      const Vec3 raw = require_vec3(*v, path + ".position");
      p.position = {to_geo(raw.x, Dimension::length), to_geo(raw.y, Dimension::length),
                    to_geo(raw.z, Dimension::length)};
    } else {
      note_default(path + ".position", "[0,0,0]");
    }

    if (const json* v = find(pj, "velocity")) {
      const Vec3 raw = require_vec3(*v, path + ".velocity");
      p.velocity = {to_geo(raw.x, Dimension::velocity), to_geo(raw.y, Dimension::velocity),
                    to_geo(raw.z, Dimension::velocity)};
    } else {
      note_default(path + ".velocity", "[0,0,0]");
    }
    if (!(dot(p.velocity, p.velocity) < 1.0)) {
      throw ValidationError(path + ": speed must be below 1 after unit conversion (|v| = " +
                            format_double(norm(p.velocity)) + ")");
    }

    if (const json* v = find(pj, "identification")) {
      p.identification = parse_identification(require_string(*v, path + ".identification"),
                                              path + ".identification");
    } else {
      note_default(path + ".identification", "dynamic");
    }

    if (const json* v = find(pj, "role")) {
      p.role = parse_role(require_string(*v, path + ".role"), path + ".role");
    } else {
      note_default(path + ".role", "source");
    }

    const json* pgv = find(pj, "p_grav");
    const json* mgv = find(pj, "m_grav");
    if (p.identification == IdentificationMode::dynamic && (pgv != nullptr || mgv != nullptr)) {
      throw ValidationError(path + ": explicit p_grav/m_grav require \"frozen\" identification");
    }
    if ((pgv != nullptr || mgv != nullptr) && si_input) {
      throw ValidationError(path + ": explicit frozen charges require geometrized units");
    }
    if (p.identification == IdentificationMode::frozen) {
      if (pgv != nullptr) {
        if (!pgv->is_array() || pgv->size() != 4) {
          bad_field(path + ".p_grav", "expected an array of 4 numbers");
        }
        FourVector pg;
        for (int k = 0; k < 4; ++k) {
          pg[k] = require_number((*pgv)[k], path + ".p_grav[" + std::to_string(k) + "]");
        }
        p.p_grav = pg;
      } else {
        p.p_grav = FourVector{p.mass, 0.0, 0.0, 0.0};
        note_default(path + ".p_grav", "[" + format_double(p.mass) + ",0,0,0]");
      }
      if (mgv != nullptr) {
        if (!mgv->is_array() || mgv->size() != 6) {
          bad_field(path + ".m_grav", "expected an array of 6 pair components 01,02,03,12,13,23");
        }
        AntisymTensor mg;
        for (int k = 0; k < 6; ++k) {
          mg.c[k] = require_number((*mgv)[k], path + ".m_grav[" + std::to_string(k) + "]");
        }
        p.m_grav = mg;
      } else {
        p.m_grav = AntisymTensor{};
        note_default(path + ".m_grav", "[0,0,0,0,0,0]");
      }
    }

    sc.particles.push_back(p);
  }

  if (const json* integ = find(root, "integrator")) {
    if (!integ->is_object()) {
      bad_field("integrator", "expected an object");
    }
    reject_unknown_keys(*integ, "integrator",
                        {"method", "dtau", "abs_tol", "rel_tol", "renormalize_u", "tol_u"});
    if (const json* v = find(*integ, "method")) {
      sc.integrator.method = parse_method(require_string(*v, "integrator.method"),
                                          "integrator.method");
    } else {
      note_default("integrator.method", "rk4");
    }
    if (const json* v = find(*integ, "dtau")) {
      sc.integrator.dtau = to_geo(require_number(*v, "integrator.dtau"), Dimension::time);
    } else {
      note_default("integrator.dtau", format_double(sc.integrator.dtau));
    }
    if (const json* v = find(*integ, "abs_tol")) {
      sc.integrator.abs_tol = require_number(*v, "integrator.abs_tol");
    } else {
      note_default("integrator.abs_tol", format_double(sc.integrator.abs_tol));
    }
    if (const json* v = find(*integ, "rel_tol")) {
      sc.integrator.rel_tol = require_number(*v, "integrator.rel_tol");
    } else {
      note_default("integrator.rel_tol", format_double(sc.integrator.rel_tol));
    }
    if (const json* v = find(*integ, "renormalize_u")) {
      sc.integrator.renormalize_u = require_bool(*v, "integrator.renormalize_u");
    } else {
      note_default("integrator.renormalize_u", "false");
    }
    if (const json* v = find(*integ, "tol_u")) {
      sc.integrator.tol_u = require_number(*v, "integrator.tol_u");
    } else {
      note_default("integrator.tol_u", format_double(sc.integrator.tol_u));
    }
  } else {
    note_default("integrator", "rk4, dtau=0.001, abs_tol=1e-10, rel_tol=1e-10, "
                 "renormalize_u=false, tol_u=1e-06");
  }
  if (!(sc.integrator.dtau > 0.0)) {
    throw ValidationError("integrator.dtau must be positive");
  }
  if (!(sc.integrator.abs_tol > 0.0) || !(sc.integrator.rel_tol > 0.0)) {
    throw ValidationError("integrator tolerances must be positive");
  }
  if (!(sc.integrator.tol_u > 0.0)) {
    throw ValidationError("integrator.tol_u must be positive");
  }

  if (const json* v = find(root, "duration")) {
    sc.duration = to_geo(require_number(*v, "duration"), Dimension::time);
  } else {
    note_default("duration", format_double(sc.duration));
  }
  if (!(sc.duration > 0.0)) {
    throw ValidationError("duration must be positive");
  }

  if (const json* outs = find(root, "outputs")) {
    if (!outs->is_array()) {
      bad_field("outputs", "expected an array");
    }
    for (std::size_t i = 0; i < outs->size(); ++i) {
      const json& oj = (*outs)[i];
      const std::string path = "outputs[" + std::to_string(i) + "]";
      if (!oj.is_object()) {
        bad_field(path, "expected an object");
      }
      const json* kv = find(oj, "kind");
      if (kv == nullptr) {
        bad_field(path + ".kind", "required");
      }
      OutputSpec o;
      o.kind = parse_kind(require_string(*kv, path + ".kind"), path + ".kind");

      const json* pv = find(oj, "path");
      if (pv == nullptr) {
        bad_field(path + ".path", "required");
      }
      o.path = require_string(*pv, path + ".path");
      validate_output_path(o.path, path + ".path");

      switch (o.kind) {
        case OutputKind::trajectory: {
          reject_unknown_keys(oj, path, {"kind", "path", "stride"});
          if (const json* v = find(oj, "stride")) {
            o.stride = require_int(*v, path + ".stride");
          } else {
            note_default(path + ".stride", "1");
          }
          if (o.stride < 1) {
            throw ValidationError(path + ".stride must be >= 1");
          }
          break;
        }
        case OutputKind::fields_on_grid:
        case OutputKind::geometry: {
          reject_unknown_keys(oj, path, {"kind", "path", "r_min", "r_max", "count", "at_time"});
          const json* rmin = find(oj, "r_min");
          const json* rmax = find(oj, "r_max");
          const json* count = find(oj, "count");
          if (rmin == nullptr || rmax == nullptr || count == nullptr) {
            bad_field(path, "radial outputs require r_min, r_max, and count");
          }
          o.r_min = to_geo(require_number(*rmin, path + ".r_min"), Dimension::length);
          o.r_max = to_geo(require_number(*rmax, path + ".r_max"), Dimension::length);
          o.count = require_int(*count, path + ".count");
          if (const json* v = find(oj, "at_time")) {
            o.at_time = to_geo(require_number(*v, path + ".at_time"), Dimension::time);
          } else {
            note_default(path + ".at_time", "0");
          }
          if (!(o.r_min > 0.0) || !(o.r_max > o.r_min)) {
            throw ValidationError(path + ": need 0 < r_min < r_max");
          }
          if (o.count < 2) {
            throw ValidationError(path + ".count must be >= 2");
          }
          break;
        }
        case OutputKind::radiation: {
          reject_unknown_keys(oj, path,
                              {"kind", "path", "n_theta", "n_phi", "at_time", "flux_radius"});
          if (const json* v = find(oj, "n_theta")) {
            o.n_theta = require_int(*v, path + ".n_theta");
          } else {
            note_default(path + ".n_theta", "64");
          }
          if (const json* v = find(oj, "n_phi")) {
            o.n_phi = require_int(*v, path + ".n_phi");
          } else {
            note_default(path + ".n_phi", "128");
          }
          if (o.n_theta < 1 || o.n_phi < 1) {
            throw ValidationError(path + ": quadrature resolution must be positive");
          }
          if (const json* v = find(oj, "at_time")) {
            o.at_time = to_geo(require_number(*v, path + ".at_time"), Dimension::time);
          } else {
            note_default(path + ".at_time", "0");
          }
          if (const json* v = find(oj, "flux_radius")) {
            o.flux_radius = to_geo(require_number(*v, path + ".flux_radius"), Dimension::length);
            if (!(o.flux_radius >= 0.0)) {
              throw ValidationError(path + ".flux_radius must be >= 0");
            }
          } else {
            note_default(path + ".flux_radius", "0");
          }
          break;
        }
        case OutputKind::checks: {
          reject_unknown_keys(oj, path, {"kind", "path"});
          break;
        }
      }
      sc.outputs.push_back(o);
    }
  } else {
    note_default("outputs", "none");
  }

  // Everything below load_scenario works in geometrized units.
  sc.unit_system = "geometrized";
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open scenario file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

std::string canonical_dump(const Scenario& sc) {
  json root;
  root["schema"] = sc.schema;
  root["name"] = sc.name;
  root["unit_system"] = sc.unit_system;
  json parts = json::array();
  for (const ParticleSpec& p : sc.particles) {
    json pj;
    pj["mass"] = p.mass;
    pj["position"] = {p.position.x, p.position.y, p.position.z};
    pj["velocity"] = {p.velocity.x, p.velocity.y, p.velocity.z};
    pj["identification"] =
        p.identification == IdentificationMode::dynamic ? "dynamic" : "frozen";
    pj["role"] = std::string(to_string(p.role));
    if (p.p_grav) {
      pj["p_grav"] = {(*p.p_grav)[0], (*p.p_grav)[1], (*p.p_grav)[2], (*p.p_grav)[3]};
    }
    if (p.m_grav) {
      pj["m_grav"] = p.m_grav->c;
    }
    parts.push_back(pj);
  }
  root["particles"] = parts;
  json integ;
  integ["method"] = sc.integrator.method == IntegratorConfig::Method::rk4 ? "rk4" : "rk45";
  integ["dtau"] = sc.integrator.dtau;
  integ["abs_tol"] = sc.integrator.abs_tol;
  integ["rel_tol"] = sc.integrator.rel_tol;
  integ["renormalize_u"] = sc.integrator.renormalize_u;
  integ["tol_u"] = sc.integrator.tol_u;
  root["integrator"] = integ;
  root["duration"] = sc.duration;
  json outs = json::array();
  for (const OutputSpec& o : sc.outputs) {
    json oj;
    oj["kind"] = std::string(to_string(o.kind));
    oj["path"] = o.path;
    switch (o.kind) {
      case OutputKind::trajectory:
        oj["stride"] = o.stride;
        break;
      case OutputKind::fields_on_grid:
      case OutputKind::geometry:
        oj["r_min"] = o.r_min;
        oj["r_max"] = o.r_max;
        oj["count"] = o.count;
        oj["at_time"] = o.at_time;
        break;
      case OutputKind::radiation:
        oj["n_theta"] = o.n_theta;
        oj["n_phi"] = o.n_phi;
        oj["at_time"] = o.at_time;
        oj["flux_radius"] = o.flux_radius;
        break;
      case OutputKind::checks:
        break;
    }
    outs.push_back(oj);
  }
  root["outputs"] = outs;
  return root.dump();
}

std::string_view to_string(ParticleRole role) {
  switch (role) {
    case ParticleRole::source:
      return "source";
    case ParticleRole::test:
      return "test";
    case ParticleRole::both:
      return "both";
  }
  return "source";
}

std::string_view to_string(OutputKind kind) {
  switch (kind) {
    case OutputKind::trajectory:
      return "trajectory";
    case OutputKind::fields_on_grid:
      return "fields-on-grid";
    case OutputKind::radiation:
      return "radiation";
    case OutputKind::geometry:
      return "geometry";
    case OutputKind::checks:
      return "checks";
  }
  return "trajectory";
}

}  // namespace pgrav
