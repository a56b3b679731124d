#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lvspread/error.hpp"
#include "lvspread/geometry.hpp"

using namespace lvs;
constexpr double kPi = std::numbers::pi;

TEST_CASE("primitive membership and distance") {
  IndicatorSet ball(2);
  ball.add_ball({1.0, 0.0, 0.0}, 2.0);
  CHECK(ball.contains({2.0, 1.0, 0.0}));
  CHECK_FALSE(ball.contains({4.0, 0.0, 0.0}));
  CHECK(ball.distance({6.0, 0.0, 0.0}) == doctest::Approx(3.0));
  CHECK(ball.distance({1.0, 0.5, 0.0}) == 0.0);
  CHECK(ball.depth({1.0, 0.5, 0.0}) == doctest::Approx(1.5));
  CHECK(ball.is_bounded());

  IndicatorSet hs(2);
  hs.add_half_space({1.0, 0.0, 0.0}, 0.0);  // x <= 0
  CHECK(hs.contains({-1.0, 5.0, 0.0}));
  CHECK(hs.distance({3.0, -7.0, 0.0}) == doctest::Approx(3.0));
  CHECK_FALSE(hs.is_bounded());

  IndicatorSet box(2);
  box.add_box({0.0, 0.0, 0.0}, {1.0, 2.0, 0.0});
  CHECK(box.distance({4.0, 6.0, 0.0}) == doctest::Approx(5.0));
  CHECK(box.distance({0.5, 3.0, 0.0}) == doctest::Approx(1.0));

  IndicatorSet shell(2);
  shell.add_shell({0.0, 0.0, 0.0}, 2.0, 3.0);
  CHECK_FALSE(shell.contains({0.0, 0.0, 0.0}));
  CHECK(shell.contains({0.0, 2.5, 0.0}));
  CHECK(shell.distance({0.5, 0.0, 0.0}) == doctest::Approx(1.5));
  CHECK(shell.distance({0.0, 5.0, 0.0}) == doctest::Approx(2.0));

  IndicatorSet cone(2);
  cone.add_cone({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, kPi / 6);
  CHECK(cone.contains({10.0, 5.0, 0.0}));
  CHECK_FALSE(cone.contains({10.0, 6.0, 0.0}));
  // point at angle 90° from the axis, distance r sin(60°) to the edge
  CHECK(cone.distance({0.0, 2.0, 0.0}) == doctest::Approx(2.0 * std::sin(kPi / 3)));
  // behind the apex the apex is nearest
  CHECK(cone.distance({-3.0, 0.0, 0.0}) == doctest::Approx(3.0));

  CHECK(IndicatorSet::empty(2).distance({0.0, 0.0, 0.0}) == kInf);
}

TEST_CASE("bad primitives") {
  IndicatorSet s1(1);
  CHECK_THROWS_AS(s1.add_cone({0, 0, 0}, {1, 0, 0}, 0.3), ValidationError);
  IndicatorSet s2(2);
  CHECK_THROWS(s2.add_ball({0, 0, 0}, -1.0));
  CHECK_THROWS(s2.add_shell({0, 0, 0}, 3.0, 2.0));
}

TEST_CASE("erosion") {
  IndicatorSet ball(2);
  ball.add_ball({0.0, 0.0, 0.0}, 5.0);
  const IndicatorSet e = ball.eroded(2.0);
  CHECK(e.contains({2.9, 0.0, 0.0}));
  CHECK_FALSE(e.contains({3.1, 0.0, 0.0}));
  CHECK(ball.eroded(6.0).is_empty());

  IndicatorSet hs(2);
  hs.add_half_space({0.0, 1.0, 0.0}, 1.0);
  const IndicatorSet he = hs.eroded(3.0);
  // y <= 1 eroded by 3 is y <= -2
  CHECK(he.contains({100.0, -2.1, 0.0}));
  CHECK_FALSE(he.contains({100.0, -1.9, 0.0}));

  IndicatorSet cone(2);
  cone.add_cone({0.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, kPi / 4);
  const IndicatorSet ce = cone.eroded(1.0);
  // eroded cone: same angle, apex moved by ρ / sin α along the axis
  CHECK(ce.contains({0.0, std::sqrt(2.0) + 0.01, 0.0}));
  CHECK_FALSE(ce.contains({0.0, std::sqrt(2.0) - 0.01, 0.0}));
}

TEST_CASE("direction classification") {
  IndicatorSet ball(2);
  ball.add_ball({3.0, 0.0, 0.0}, 2.0);
  const auto cb = classify_directions(ball);
  CHECK(cb.directions.size() == 512);
  CHECK(cb.n_unbounded() == 0);
  CHECK(speed_function(cb, 0.4, {0.0, 1.0, 0.0}) == doctest::Approx(0.4));

  IndicatorSet hs(2);
  hs.add_half_space({1.0, 0.0, 0.0}, 0.0);
  const auto ch = classify_directions(hs);
  CHECK(ch.is_unbounded({-1.0, 0.0, 0.0}));
  CHECK_FALSE(ch.is_unbounded({1.0, 0.0, 0.0}));
  CHECK(speed_function(ch, 0.4, {-1.0, 0.2, 0.0}) == kInf);
  CHECK(speed_function(ch, 0.4, {1.0, 0.0, 0.0}) == doctest::Approx(0.4).epsilon(1e-3));

  IndicatorSet cone(2);
  const double alpha = kPi / 6;
  cone.add_cone({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, alpha);
  const auto cc = classify_directions(cone);
  for (double deg : {45.0, 60.0, 75.0}) {
    const double theta = alpha + deg * kPi / 180.0;
    const double w = speed_function(cc, 1.0, {std::cos(theta), std::sin(theta), 0.0});
    CHECK(w == doctest::Approx(1.0 / std::sin(theta - alpha)).epsilon(0.01));
  }
  CHECK(speed_function(cc, 1.0, {std::cos(1.9), std::sin(1.9), 0.0}) >= 1.0);
  CHECK_THROWS_AS(speed_function(cc, 0.0, {1.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("3D Fibonacci sample") {
  const auto d = sample_directions(3, 200);
  CHECK(d.size() == 200);
  for (const auto& e : d) CHECK(std::hypot(e[0], e[1], e[2]) == doctest::Approx(1.0));
  IndicatorSet hs(3);
  hs.add_half_space({0.0, 0.0, 1.0}, 0.0);
  ClassifyOptions o;
  o.m = 400;
  const auto c = classify_directions(hs, o);
  CHECK(static_cast<double>(c.n_unbounded()) / 400.0 == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("envelope routes agree away from boundaries") {
  IndicatorSet hs(2);
  hs.add_half_space({1.0, 0.0, 0.0}, 0.0);
  const auto ch = classify_directions(hs);
  const auto m1 = envelope_membership(ch, 0.5, {0.3, 4.0, 0.0});
  CHECK(m1.route_a);
  CHECK(m1.route_b);
  const auto m2 = envelope_membership(ch, 0.5, {0.7, 4.0, 0.0});
  CHECK_FALSE(m2.route_a);
  CHECK_FALSE(m2.route_b);
}

TEST_CASE("coverage and CSV") {
  IndicatorSet hs(2);
  hs.add_half_space({1.0, 0.0, 0.0}, 0.0);
  CHECK(abcon_coverage(hs, 2.0) == doctest::Approx(1.0));
  const auto c = classify_directions(hs);
  std::ostringstream os;
  write_classification_csv(os, c, 0.5);
  CHECK(os.str().find("angle,label,ratio,w") != std::string::npos);
}
