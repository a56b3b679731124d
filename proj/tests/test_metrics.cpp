#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lvspread/metrics.hpp"

using namespace lvs;

namespace {

// u is a linear ramp of width 10 centred on s(t) = 3 + 1.5 t, so the 1/2
// crossing is exact under linear interpolation.
Trajectory ramp_trajectory(GridKind kind) {
  Trajectory t;
  t.grid = kind == GridKind::line ? Grid::line(200.0, 0.5) : Grid::radial(2, 200.0, 0.5);
  t.params = {1.0, 1.0, 2.0, 2.0};
  for (int k = 0; k <= 40; ++k) {
    GridState s;
    s.t = k;
    const double front = 3.0 + 1.5 * k;
    for (std::size_t i = 0; i < t.grid.size(); ++i) {
      const double x = std::abs(t.grid.coord(i));
      s.u.push_back(std::clamp(0.5 - (x - front) / 10.0, 0.0, 1.0));
      s.v.push_back(0.0);
    }
    t.snapshots.push_back(std::move(s));
  }
  return t;
}

}  // namespace

TEST_CASE("tracking an exact ramp") {
  for (GridKind kind : {GridKind::line, GridKind::radial}) {
    const Trajectory t = ramp_trajectory(kind);
    const FrontTrack tr = track_level(t, Field::u, 0.5, {1.0, 0.0, 0.0});
    REQUIRE(tr.t.size() == 41);
    CHECK(tr.position[10] == doctest::Approx(18.0));
    const SpeedEstimate e = fit_speed(tr);
    CHECK(e.speed == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(e.intercept == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(e.t1 == doctest::Approx(20.0));
    CHECK(e.rms_residual < 1e-9);
  }
  // mirror half-line on the line grid
  const FrontTrack left = track_level(ramp_trajectory(GridKind::line), Field::u, 0.5, {-1.0, 0.0, 0.0});
  CHECK(fit_speed(left).speed == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("level not attained") {
  const Trajectory t = ramp_trajectory(GridKind::line);
  CHECK_THROWS(track_level(t, Field::v, 0.5, {1.0, 0.0, 0.0}));
}

TEST_CASE("zones on a synthetic fast-u state") {
  Trajectory t = ramp_trajectory(GridKind::radial);
  const Speeds sp = validate({1.44, 1.0, 2.0, 2.0});  // c_u = 2.4 > c_v
  t.params = {1.44, 1.0, 2.0, 2.0};
  // the ramp moves at 1.5: u = 1 inside 0.75 t, u = 0 beyond 3 t
  ZoneReport rep = check_zones(t, sp, {0.75, 3.0}, 0.05);
  CHECK(rep.pass);
  CHECK(rep.zones.size() == 3);
  t.snapshots.back().v[5] = 0.2;
  rep = check_zones(t, sp, {0.75, 3.0}, 0.05);
  CHECK_FALSE(rep.pass);
  std::ostringstream os;
  write_zone_report(os, rep);
  CHECK(os.str().find("pass") != std::string::npos);
  CHECK_THROWS(check_zones(t, sp, {0.75}, 0.05));
}

TEST_CASE("CSV writers") {
  const FrontTrack tr = track_level(ramp_trajectory(GridKind::line), Field::u, 0.5, {1.0, 0.0, 0.0});
  std::ostringstream os;
  write_track_csv(os, tr);
  CHECK(os.str().rfind("#", 0) == 0);
  std::ostringstream es;
  write_speed_record(es, fit_speed(tr));
  CHECK(es.str().find("speed") != std::string::npos);
}
