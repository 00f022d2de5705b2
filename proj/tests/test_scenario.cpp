#include <algorithm>
#include <string>

#include "doctest.h"
#include "pgrav/scenario.hpp"

using namespace pgrav;

namespace {

Scenario parse(const std::string& body) { return parse_scenario(body, "cfg"); }

bool has_default(const Scenario& sc, const std::string& key, const std::string& value) {
  return std::find(sc.defaults_applied.begin(), sc.defaults_applied.end(),
                   std::make_pair(key, value)) != sc.defaults_applied.end();
}

const std::string kMinimal = R"({"name": "t", "particles": [{"mass": 2}]})";

}  // namespace

TEST_CASE("minimal scenario fills documented defaults") {
  const Scenario sc = parse(kMinimal);
  CHECK(sc.schema == 1);
  CHECK(sc.name == "t");
  CHECK(sc.unit_system == "geometrized");
  REQUIRE(sc.particles.size() == 1);
  CHECK(sc.particles[0].mass == 2.0);
  CHECK(sc.particles[0].role == ParticleRole::source);
  CHECK(sc.particles[0].identification == IdentificationMode::dynamic);
  CHECK_FALSE(sc.particles[0].p_grav.has_value());
  CHECK(sc.integrator.method == IntegratorConfig::Method::rk4);
  CHECK(sc.integrator.dtau == 1e-3);
  CHECK(sc.duration == 1.0);
  CHECK(sc.outputs.empty());

  CHECK(has_default(sc, "schema", "1"));
  CHECK(has_default(sc, "unit_system", "geometrized"));
  CHECK(has_default(sc, "particles[0].position", "[0,0,0]"));
  CHECK(has_default(sc, "particles[0].velocity", "[0,0,0]"));
  CHECK(has_default(sc, "particles[0].identification", "dynamic"));
  CHECK(has_default(sc, "particles[0].role", "source"));
  CHECK(has_default(sc, "outputs", "none"));
}

TEST_CASE("comments are accepted") {
  const Scenario sc = parse("{\n// a comment\n\"name\": \"t\", \"particles\": [{\"mass\": 1}]}");
  CHECK(sc.name == "t");
}

TEST_CASE("frozen identification defaults to rest-frame charges") {
  const Scenario sc = parse(
      R"({"name": "t", "particles": [{"mass": 2, "identification": "frozen"}]})");
  REQUIRE(sc.particles[0].p_grav.has_value());
  CHECK((*sc.particles[0].p_grav)[0] == 2.0);
  CHECK((*sc.particles[0].p_grav)[1] == 0.0);
  REQUIRE(sc.particles[0].m_grav.has_value());
  for (int q = 0; q < 6; ++q) CHECK(sc.particles[0].m_grav->c[q] == 0.0);
  CHECK(has_default(sc, "particles[0].p_grav", "[2,0,0,0]"));
  CHECK(has_default(sc, "particles[0].m_grav", "[0,0,0,0,0,0]"));
}

TEST_CASE("explicit frozen charges are taken verbatim") {
  const Scenario sc = parse(R"({"name": "t", "particles": [
      {"mass": 2, "identification": "frozen",
       "p_grav": [2, 0.1, 0, 0], "m_grav": [0, 0, 0, 0.5, 0, 0]}]})");
  CHECK((*sc.particles[0].p_grav)[1] == 0.1);
  CHECK(sc.particles[0].m_grav->comp(1, 2) == 0.5);
}

TEST_CASE("malformed json reports the origin and line") {
  try {
    parse("{\n\"name\": }");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.rfind("cfg:2", 0) == 0);
  }
}

TEST_CASE("schema and shape validation") {
  CHECK_THROWS_AS(parse(R"({"name": "t", "schema": 2, "particles": [{"mass": 1}]})"),
                  ValidationError);
  CHECK_THROWS_AS(parse(R"({"particles": [{"mass": 1}]})"), ValidationError);  // no name
  CHECK_THROWS_AS(parse(R"({"name": "t"})"), ValidationError);  // no particles
  CHECK_THROWS_AS(parse(R"({"name": "t", "particles": []})"), ValidationError);
  CHECK_THROWS_AS(parse(R"({"name": "t", "particles": [{"mass": 1}], "extra": 1})"),
                  ValidationError);
  CHECK_THROWS_AS(parse(R"({"name": "t", "particles": [{"mass": 1, "color": "red"}]})"),
                  ValidationError);
  CHECK_THROWS_AS(parse(R"({"name": "t", "unit_system": "cgs", "particles": [{"mass": 1}]})"),
                  ValidationError);
  CHECK_THROWS_AS(parse(R"({"name": "t", "particles": [{}]})"), ParseError);  // mass required
  CHECK_THROWS_AS(parse(R"({"name": "t", "particles": [{"mass": -1}]})"), ValidationError);
  CHECK_THROWS_AS(parse(R"({"name": "t", "particles": [{"mass": 1, "velocity": [1, 0, 0]}]})"),
                  ValidationError);
  CHECK_THROWS_AS(parse(R"({"name": "t", "particles": [{"mass": 1, "role": "probe"}]})"),
                  ParseError);
}

TEST_CASE("frozen charge preconditions") {
  // Explicit charges demand frozen identification.
  CHECK_THROWS_AS(parse(R"({"name": "t", "particles": [
      {"mass": 1, "p_grav": [1, 0, 0, 0]}]})"),
                  ValidationError);
  // And geometrized units.
  CHECK_THROWS_AS(parse(R"({"name": "t", "unit_system": "si", "particles": [
      {"mass": 1, "identification": "frozen", "p_grav": [1, 0, 0, 0]}]})"),
                  ValidationError);
  // Wrong arity.
  CHECK_THROWS_AS(parse(R"({"name": "t", "particles": [
      {"mass": 1, "identification": "frozen", "m_grav": [0, 0, 0, 0, 0]}]})"),
                  ParseError);
}

TEST_CASE("integrator and duration validation") {
  CHECK_THROWS_AS(
      parse(R"({"name": "t", "particles": [{"mass": 1}], "integrator": {"dtau": 0}})"),
      ValidationError);
  CHECK_THROWS_AS(
      parse(R"({"name": "t", "particles": [{"mass": 1}], "integrator": {"method": "euler"}})"),
      ParseError);
  CHECK_THROWS_AS(parse(R"({"name": "t", "particles": [{"mass": 1}], "duration": 0})"),
                  ValidationError);
  CHECK_THROWS_AS(
      parse(R"({"name": "t", "particles": [{"mass": 1}], "integrator": {"tol_u": -1}})"),
      ValidationError);
}

TEST_CASE("output validation") {
  const std::string head = R"({"name": "t", "particles": [{"mass": 1}], "outputs": [)";
  const std::string tail = "]}";
  CHECK_THROWS_AS(parse(head + R"({"kind": "trajectory", "path": "/abs.csv"})" + tail),
                  ValidationError);
  CHECK_THROWS_AS(parse(head + R"({"kind": "trajectory", "path": "../up.csv"})" + tail),
                  ValidationError);
  CHECK_THROWS_AS(parse(head + R"({"kind": "trajectory", "path": "t.csv", "stride": 0})" + tail),
                  ValidationError);
  CHECK_THROWS_AS(parse(head + R"({"kind": "trajectory", "path": "t.csv", "count": 3})" + tail),
                  ValidationError);  // key outside the trajectory whitelist
  CHECK_THROWS_AS(parse(head + R"({"kind": "fields-on-grid", "path": "g.csv"})" + tail),
                  ParseError);  // r_min/r_max/count required
  CHECK_THROWS_AS(
      parse(head +
            R"({"kind": "fields-on-grid", "path": "g.csv", "r_min": 2, "r_max": 1, "count": 4})" +
            tail),
      ValidationError);
  CHECK_THROWS_AS(
      parse(head +
            R"({"kind": "geometry", "path": "g.csv", "r_min": 1, "r_max": 2, "count": 1})" +
            tail),
      ValidationError);
  CHECK_THROWS_AS(
      parse(head + R"({"kind": "radiation", "path": "r.csv", "n_theta": 0})" + tail),
      ValidationError);
  CHECK_THROWS_AS(
      parse(head + R"({"kind": "radiation", "path": "r.csv", "flux_radius": -1})" + tail),
      ValidationError);
  CHECK_THROWS_AS(parse(head + R"({"kind": "checks", "path": "c.csv", "stride": 2})" + tail),
                  ValidationError);
  CHECK_THROWS_AS(parse(head + R"({"kind": "spectrum", "path": "s.csv"})" + tail), ParseError);

  const Scenario ok = parse(
      head + R"({"kind": "radiation", "path": "r.csv", "at_time": 5, "flux_radius": 40})" + tail);
  REQUIRE(ok.outputs.size() == 1);
  CHECK(ok.outputs[0].kind == OutputKind::radiation);
  CHECK(ok.outputs[0].n_theta == 64);
  CHECK(ok.outputs[0].flux_radius == 40.0);
  CHECK(has_default(ok, "outputs[0].n_theta", "64"));
}

TEST_CASE("si input converts to geometrized on load") {
  const Scenario sc = parse(R"({
    "name": "t", "unit_system": "si",
    "particles": [{"mass": 1.989e30, "position": [1.496e11, 0, 0],
                   "velocity": [0, 2.978e4, 0]}],
    "integrator": {"dtau": 1.0},
    "duration": 1.0})");
  CHECK(sc.unit_system == "geometrized");
  CHECK(sc.particles[0].mass == doctest::Approx(1477.0632775277024).epsilon(1e-13));
  CHECK(sc.particles[0].position.x == 1.496e11);  // lengths are meters in both systems
  CHECK(sc.particles[0].velocity.y ==
        doctest::Approx(9.933538755000969e-05).epsilon(1e-13));
  CHECK(sc.duration == doctest::Approx(299792458.0));
  CHECK(sc.integrator.dtau == doctest::Approx(299792458.0));
}

TEST_CASE("canonical dump is key-order independent") {
  const std::string a = R"({"name": "t", "schema": 1, "duration": 2.5,
    "particles": [{"mass": 2, "velocity": [0, 0.1, 0]}]})";
  const std::string b = R"({
    // reordered but identical
    "particles": [{"velocity": [0, 0.1, 0], "mass": 2}],
    "duration": 2.5, "schema": 1, "name": "t"})";
  CHECK(canonical_dump(parse(a)) == canonical_dump(parse(b)));
  CHECK(canonical_dump(parse(a)) != canonical_dump(parse(kMinimal)));
}

TEST_CASE("load_scenario reports unreadable files") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/nope.json"), ParseError);
}

#ifdef PGRAV_SCENARIO_DIR
TEST_CASE("shipped scenario templates parse") {
  const std::filesystem::path dir = PGRAV_SCENARIO_DIR;
  for (const char* name : {"earth_sun.json", "circular_orbit.json", "static_profile.json",
                           "radiation_demo.json", "verification.json"}) {
    const Scenario sc = load_scenario(dir / name);
    CHECK_FALSE(sc.name.empty());
    CHECK_FALSE(sc.particles.empty());
  }
  // The slow-orbit template is SI end to end.
  const Scenario es = load_scenario(dir / "earth_sun.json");
  CHECK(es.particles.size() == 2);
  CHECK(es.particles[1].mass == doctest::Approx(0.004434902912717667).epsilon(1e-13));
}
#endif
