#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "dispatch.hpp"

using namespace lvcli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("lvs_cli_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("defaults and minimal front config") {
  const RunConfig cfg = parse_config_text("[model]\nd = 1\nr = 1\na = 2\nb = 2\n");
  CHECK(cfg.command() == "front");
  CHECK(cfg.real("front.half_length") == 60.0);
  CHECK(cfg.integer("front.n_points") == 2401);
  CHECK(cfg.real("grid.h") == doctest::Approx(0.2));
  CHECK(std::isnan(cfg.real("zones.c_uv")));
  CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("unknown keys and sections are rejected by name") {
  try {
    parse_config_text("[model]\ndiffusionn = 2\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "model.diffusionn");
    CHECK(std::string(e.what()).find("diffusionn") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_text("[modle]\nd = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("d = 2\n"), ConfigError);
  try {
    parse_config_text("[grid]\nh = fine\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "grid.h");
  }
  CHECK_THROWS_AS(parse_config_text("[front]\nn_points = 2.5\n"), ConfigError);
  RunConfig cfg;
  CHECK_THROWS_AS(apply_override(cfg, "model.d"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "run.nope=1"), ConfigError);
}

TEST_CASE("cross-key validation") {
  RunConfig cfg;
  cfg.set("run.command", "plot");
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.set("run.command", "simulate");
  cfg.set("grid.kind", "sphere");
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("set expressions") {
  lvs_set* s = build_set("ball(0,0,3) + box(5,5,6,6)", 2);
  int in = 0;
  const double a[3] = {5.5, 5.5, 0}, b[3] = {4, 0, 0};
  lvs_set_contains(s, a, &in);
  CHECK(in == 1);
  lvs_set_contains(s, b, &in);
  CHECK(in == 0);
  lvs_set_free(s);
  s = build_set("cone(0,0, 1,0, 30)", 2);
  const double c[3] = {10, 5, 0};
  lvs_set_contains(s, c, &in);
  CHECK(in == 1);
  lvs_set_free(s);
  CHECK_THROWS_AS(build_set("ball(0,3)", 2), ConfigError);
  CHECK_THROWS_AS(build_set("blob(1)", 1), ConfigError);
  CHECK_THROWS_AS(build_set("ball(0,3", 1), ConfigError);
}

TEST_CASE("front on symmetric params, override echoed") {
  const fs::path dir = scratch("front");
  const fs::path ini = fs::temp_directory_path() / "lvs_cli_front.ini";
  std::ofstream(ini) << "[run]\ncommand = front\n[model]\nd = 1\nr = 1\na = 2\nb = 3\n";
  RunConfig cfg = parse_config_file(ini.string());
  apply_override(cfg, "model.b=2");
  apply_override(cfg, "run.out=" + dir.string());
  std::ostringstream log, err;
  CHECK(dispatch(cfg, log, err) == kExitOk);
  const std::string m = slurp(dir / "manifest.txt");
  CHECK(m.find("override = model.b = 2") != std::string::npos);
  CHECK(m.find("\nb = 2\n") != std::string::npos);
  CHECK(m.find("seeds = none") != std::string::npos);
  const auto pos = m.find("c_uv = ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::abs(std::stod(m.substr(pos + 7))) < 1e-6);
  CHECK(fs::exists(dir / "profile.csv"));
  fs::remove_all(dir);
  fs::remove(ini);
}

TEST_CASE("zones without a trajectory") {
  const fs::path dir = scratch("zones");
  RunConfig cfg;
  apply_override(cfg, "run.command=zones");
  apply_override(cfg, "run.out=" + dir.string());
  std::ostringstream log, err;
  CHECK(dispatch(cfg, log, err) == kExitConfig);
  CHECK(err.str().find("missing trajectory") != std::string::npos);
  const std::string rec = slurp(dir / "error.json");
  CHECK(rec.find("\"exit_code\": 2") != std::string::npos);
  CHECK(rec.find("missing trajectory") != std::string::npos);
  apply_override(cfg, "zones.trajectory=" + (dir / "nowhere").string());
  CHECK(dispatch(cfg, log, err) == kExitConfig);
  fs::remove_all(dir);
}

TEST_CASE("numeric failures exit with 3") {
  const fs::path dir = scratch("numeric");
  RunConfig cfg;
  apply_override(cfg, "run.out=" + dir.string());
  apply_override(cfg, "front.max_newton=1");
  std::ostringstream log, err;
  CHECK(dispatch(cfg, log, err) == kExitNumeric);
  CHECK(err.str().find("convergence") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("simulate is deterministic and zones reads it back") {
  const fs::path d1 = scratch("sim1"), d2 = scratch("sim2"), dz = scratch("zones2");
  auto make = [](const fs::path& out) {
    RunConfig c = parse_config_text(
        "[run]\ncommand = simulate\n[model]\nd = 4\nr = 1\na = 1.5\nb = 5\n[grid]\nkind = radial\nL = 120\nh = 0.5\n"
        "[scenario]\nU = ball(0,10)\nV = shell(0,15,25)\n[sim]\nT_final = 10\nsnapshot_every = 2\n");
    apply_override(c, "run.out=" + out.string());
    apply_override(c, "run.threads=2");
    return c;
  };
  std::ostringstream log, err;
  REQUIRE(dispatch(make(d1), log, err) == kExitOk);
  REQUIRE(dispatch(make(d2), log, err) == kExitOk);
  int compared = 0;
  for (const auto& f : fs::directory_iterator(d1 / "trajectory")) {
    if (f.path().extension() != ".csv") continue;
    CHECK(slurp(f.path()) == slurp(d2 / "trajectory" / f.path().filename()));
    ++compared;
  }
  CHECK(compared == 6);

  RunConfig z;
  apply_override(z, "run.command=zones");
  apply_override(z, "run.out=" + dz.string());
  apply_override(z, "zones.trajectory=" + (d1 / "trajectory").string());
  std::ostringstream zerr;
  CHECK(dispatch(z, log, zerr) == kExitOk);
  INFO(zerr.str());
  CHECK(fs::exists(dz / "zones.txt"));
  CHECK(slurp(dz / "manifest.txt").find("input = " + (d1 / "trajectory").string()) != std::string::npos);
  for (const auto& d : {d1, d2, dz}) fs::remove_all(d);
}

TEST_CASE("certify chains the front solve") {
  const fs::path dir = scratch("certify");
  RunConfig cfg = parse_config_text(
      "[run]\ncommand = certify\n[model]\nd = 1\nr = 2\na = 1.5\nb = 2\n[certify]\nkind = super\nt_max = 4\nn_t = 5\n"
      "n_coarse = 1000\n");
  apply_override(cfg, "run.out=" + dir.string());
  std::ostringstream log, err;
  CHECK(dispatch(cfg, log, err) == kExitOk);
  CHECK(fs::exists(dir / "profile.csv"));
  CHECK(fs::exists(dir / "certificate_super.txt"));
  const std::string m = slurp(dir / "manifest.txt");
  CHECK(m.find("super.verdict = pass") != std::string::npos);
  fs::remove_all(dir);
}
