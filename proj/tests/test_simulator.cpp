#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <random>

#include "lvspread/error.hpp"
#include "lvspread/simulator.hpp"

using namespace lvs;
namespace fs = std::filesystem;

TEST_CASE("grids") {
  const Grid g = Grid::line(10.0, 0.3);
  CHECK(g.n % 2 == 1);  // even cell count, x = 0 is a node
  CHECK(g.coord(g.n / 2) == doctest::Approx(0.0).epsilon(1e-12));
  const Grid r = Grid::radial(3, 5.0, 0.5);
  CHECK(r.n == 11);
  CHECK(r.coord(4) == doctest::Approx(2.0));
  CHECK(r.boundary_distance(4) == doctest::Approx(3.0));
  const Grid p = Grid::plane(2.0, 0.5);
  CHECK(p.size() == p.n * p.n);
  CHECK(p.point(p.n + 2)[1] == doctest::Approx(-1.5));
  CHECK_THROWS_AS(Grid::line(1.0, -0.1), ValidationError);
}

TEST_CASE("time step bounds") {
  const ModelParams pm{4.0, 1.0, 2.0, 2.0};
  const Grid g = Grid::radial(2, 50.0, 0.25);
  CHECK(diffusion_dt_bound(g, pm) == doctest::Approx(0.9 * 0.0625 / 16.0));
  CHECK(default_dt(g, pm) <= diffusion_dt_bound(g, pm));
  const ModelParams stiff{1.0, 50.0, 3.0, 3.0};
  CHECK(default_dt(Grid::line(10.0, 0.5), stiff) <= 0.1 / (50.0 * 4.0) + 1e-15);
}

TEST_CASE("constant equilibria are fixed points") {
  const ModelParams pm{1.0, 1.0, 2.0, 2.0};
  for (const Grid& g : {Grid::line(5.0, 0.5), Grid::radial(2, 5.0, 0.5), Grid::plane(3.0, 0.5)}) {
    for (auto [u0, v0] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}, std::pair{0.0, 0.0}}) {
      GridState s{0.0, std::vector<double>(g.size(), u0), std::vector<double>(g.size(), v0)};
      const GridState t = step(g, s, pm, default_dt(g, pm));
      for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(t.u[k] == u0);
        CHECK(t.v[k] == v0);
      }
    }
  }
}

TEST_CASE("box invariance and threaded bands") {
  const ModelParams pm{2.0, 3.0, 1.5, 4.0};
  const Grid g = Grid::line(40.0, 0.1);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  GridState s{0.0, std::vector<double>(g.n), std::vector<double>(g.n)};
  for (std::size_t k = 0; k < g.n; ++k) {
    s.u[k] = U(rng);
    s.v[k] = U(rng);
  }
  GridState a = s, b = s;
  const double dt = default_dt(g, pm);
  for (int i = 0; i < 50; ++i) {
    a = step(g, a, pm, dt, 1);
    b = step(g, b, pm, dt, 4);
  }
  for (std::size_t k = 0; k < g.n; ++k) {
    CHECK(a.u[k] >= 0.0);
    CHECK(a.u[k] <= 1.0);
    CHECK(a.v[k] >= 0.0);
    CHECK(a.v[k] <= 1.0);
    CHECK(a.u[k] == b.u[k]);
    CHECK(a.v[k] == b.v[k]);
  }
}

TEST_CASE("radial N = 1 reproduces symmetric line data") {
  const ModelParams pm{1.0, 1.0, 2.0, 2.0};
  ScenarioSpec sc;
  sc.kind = ScenarioSpec::Kind::C1;
  sc.U = IndicatorSet(1);
  sc.U.add_ball({0.0, 0.0, 0.0}, 5.0);
  sc.V = IndicatorSet(1);
  sc.V.add_shell({0.0, 0.0, 0.0}, 8.0, 12.0);
  RunOptions o;
  o.dt = 0.01;
  const Trajectory line = run(Grid::line(40.0, 0.2), sc, pm, 5.0, 5.0, o);
  const Trajectory rad = run(Grid::radial(1, 40.0, 0.2), sc, pm, 5.0, 5.0, o);
  const auto& lu = line.snapshots.back().u;
  const auto& ru = rad.snapshots.back().u;
  const std::size_t mid = line.grid.n / 2;
  double worst = 0.0;
  for (std::size_t i = 0; i < rad.grid.n; ++i) worst = std::max(worst, std::abs(lu[mid + i] - ru[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("initial data checks") {
  const ModelParams pm{1.0, 1.0, 2.0, 2.0};
  ScenarioSpec sc;
  sc.U = IndicatorSet(1);
  sc.U.add_ball({0.0, 0.0, 0.0}, 5.0);
  sc.V = IndicatorSet(1);
  sc.V.add_ball({3.0, 0.0, 0.0}, 5.0);
  CHECK_THROWS_AS(init_state(Grid::line(20.0, 0.5), sc), ConfigError);  // overlap
  sc.V = IndicatorSet(1);
  sc.V.add_ball({17.0, 0.0, 0.0}, 2.0);
  CHECK_THROWS_AS(init_state(Grid::line(20.0, 0.5), sc), ConfigError);  // too close to the edge
  sc.V = IndicatorSet(1);
  sc.V.add_ball({3.0, 0.0, 0.0}, 1.0);
  CHECK_THROWS_AS(init_state(Grid::radial(2, 20.0, 0.5), sc), ConfigError);  // off-centre on a radial grid
  sc.kind = ScenarioSpec::Kind::C2;
  const GridState s = init_state(Grid::line(20.0, 0.5), sc);
  for (std::size_t k = 0; k < s.u.size(); ++k) CHECK(s.u[k] + s.v[k] == 1.0);
}

TEST_CASE("trajectory round trip") {
  const ModelParams pm{1.0, 2.0, 1.5, 2.0};
  ScenarioSpec sc;
  sc.kind = ScenarioSpec::Kind::C2;
  sc.U = IndicatorSet(1);
  sc.U.add_half_space({1.0, 0.0, 0.0}, 0.0);
  const Trajectory t = run(Grid::line(30.0, 0.25), sc, pm, 4.0, 1.0);
  CHECK(t.snapshots.size() == 5);
  const fs::path dir = fs::temp_directory_path() / "lvs_test_traj";
  fs::remove_all(dir);
  write_trajectory(dir.string(), t);
  const Trajectory r = read_trajectory(dir.string());
  CHECK(r.grid.n == t.grid.n);
  CHECK(r.params.a == t.params.a);
  REQUIRE(r.snapshots.size() == t.snapshots.size());
  CHECK(r.snapshots[3].t == t.snapshots[3].t);
  CHECK(r.snapshots[3].u == t.snapshots[3].u);
  CHECK_THROWS_AS(read_trajectory((dir / "nope").string()), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("radius search needs a radial grid") {
  CHECK_THROWS_AS(invasion_radius_search({1.0, 1.0, 2.0, 2.0}, Grid::line(50.0, 0.5), 10.0, 4, 10.0), ConfigError);
}
