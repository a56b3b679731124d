#pragma once

// Property suites shared by the doctest runner and the acceptance binary.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "lvspread/certificates.hpp"
#include "lvspread/front.hpp"
#include "lvspread/geometry.hpp"
#include "lvspread/model.hpp"
#include "lvspread/simulator.hpp"

namespace props {

struct Count {
  std::size_t cases = 0;
  std::size_t violations = 0;
  double worst = 0.0;
};

// Random ordered pairs (u1 >= u2, v1 <= v2) on a line grid, random
// coefficients, stepped `steps` times with the default dt.
inline Count comparison_principle(std::size_t pairs, int steps = 40, unsigned seed = 20240611) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Count c;
  const lvs::Grid g = lvs::Grid::line(10.0, 0.25);
  for (std::size_t k = 0; k < pairs; ++k) {
    lvs::ModelParams p{0.2 + 3.8 * U(rng), 0.2 + 3.8 * U(rng), 0.5 + 4.5 * U(rng), 0.5 + 4.5 * U(rng)};
    lvs::GridState hi, lo;
    for (std::size_t i = 0; i < g.n; ++i) {
      const double u2 = U(rng), v1 = U(rng);
      lo.u.push_back(u2);
      hi.u.push_back(u2 + (1.0 - u2) * U(rng) * (U(rng) < 0.8));
      hi.v.push_back(v1);
      lo.v.push_back(v1 + (1.0 - v1) * U(rng) * (U(rng) < 0.8));
    }
    const double dt = lvs::default_dt(g, p);
    for (int s = 0; s < steps; ++s) {
      hi = lvs::step(g, hi, p, dt);
      lo = lvs::step(g, lo, p, dt);
      for (std::size_t i = 0; i < g.n; ++i) {
        const double d = std::max(lo.u[i] - hi.u[i], hi.v[i] - lo.v[i]);
        if (d > 0.0) {
          ++c.violations;
          c.worst = std::max(c.worst, d);
        }
      }
    }
    ++c.cases;
  }
  return c;
}

// U_ρ2 ⊂ U_ρ1 ⊂ U for ρ1 < ρ2 on random points and random 2D unions.
inline Count erosion_monotone(std::size_t sets, std::size_t points, unsigned seed = 99) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Count c;
  for (std::size_t k = 0; k < sets; ++k) {
    lvs::IndicatorSet s(2);
    const int n = 1 + static_cast<int>(k % 3);
    for (int j = 0; j < n; ++j) {
      const lvs::Point p{10.0 * U(rng), 10.0 * U(rng), 0.0};
      switch ((k + j) % 5) {
        case 0: s.add_ball(p, 2.0 + 4.0 * std::abs(U(rng))); break;
        case 1: {
          const double th = 3.14159 * U(rng);
          s.add_half_space({std::cos(th), std::sin(th), 0.0}, 5.0 * U(rng));
          break;
        }
        case 2: s.add_box(p, {p[0] + 3.0 + 5.0 * std::abs(U(rng)), p[1] + 3.0 + 5.0 * std::abs(U(rng)), 0.0}); break;
        case 3: {
          const double th = 3.14159 * U(rng);
          s.add_cone(p, {std::cos(th), std::sin(th), 0.0}, 0.3 + std::abs(U(rng)));
          break;
        }
        default: s.add_shell(p, 1.0 + std::abs(U(rng)), 4.0 + 3.0 * std::abs(U(rng))); break;
      }
    }
    const double r1 = 0.5 + std::abs(U(rng)), r2 = r1 + 0.5 + std::abs(U(rng));
    const lvs::IndicatorSet e1 = s.eroded(r1), e2 = s.eroded(r2);
    for (std::size_t i = 0; i < points; ++i) {
      const lvs::Point x{20.0 * U(rng), 20.0 * U(rng), 0.0};
      const bool in2 = e2.contains(x), in1 = e1.contains(x), in0 = s.contains(x);
      if ((in2 && !in1) || (in1 && !in0)) ++c.violations;
      // eroded points sit at least ρ inside
      if (in1 && s.depth(x) < r1 - 1e-9) ++c.violations;
      ++c.cases;
    }
  }
  return c;
}

struct Antisymmetry {
  double worst = 0.0;
  std::vector<std::string> lines;
};

inline Antisymmetry antisymmetry(const std::vector<std::pair<double, double>>& ab) {
  Antisymmetry out;
  for (auto [a, b] : ab) {
    const double c1 = lvs::solve_bistable_front({1.0, 1.0, a, b}).speed;
    const double c2 = lvs::solve_bistable_front({1.0, 1.0, b, a}).speed;
    out.worst = std::max(out.worst, std::abs(c1 + c2));
    out.lines.push_back("c(" + std::to_string(a) + "," + std::to_string(b) + ") = " + std::to_string(c1) +
                        ", c(b,a) = " + std::to_string(c2));
  }
  return out;
}

// Exponential bound on both fields and both half-lines; then a corrupted
// copy (mass pushed far ahead of the front) must be caught.
struct ExpBound {
  bool all_ok = true;
  bool mutation_caught = false;
  double worst_excess = -1e300;
};

inline ExpBound exponential_bounds(const lvs::Trajectory& t) {
  ExpBound out;
  for (lvs::Field f : {lvs::Field::u, lvs::Field::v}) {
    for (double s : {1.0, -1.0}) {
      const auto r = lvs::exponential_bound_check(t, f, {s, 0.0, 0.0});
      out.all_ok = out.all_ok && r.ok;
      out.worst_excess = std::max(out.worst_excess, r.worst_excess);
    }
  }
  lvs::Trajectory bad = t;
  auto& last = bad.snapshots[bad.snapshots.size() / 2];
  last.u[last.u.size() - 20] = 0.5;
  out.mutation_caught = !lvs::exponential_bound_check(bad, lvs::Field::u, {1.0, 0.0, 0.0}).ok;
  return out;
}

}  // namespace props
