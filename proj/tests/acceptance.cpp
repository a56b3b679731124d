// Acceptance criteria 1-8. One PASS/FAIL line per criterion, details
// indented below it. Exit status counts failures that are not listed in
// kDocumentedFailures (see README, "Known failures").

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lvspread/certificates.hpp"
#include "lvspread/front.hpp"
#include "lvspread/geometry.hpp"
#include "lvspread/metrics.hpp"
#include "lvspread/simulator.hpp"
#include "properties.hpp"

using namespace lvs;

namespace {

const std::set<int> kDocumentedFailures = {7};

int g_unexpected = 0;
std::string g_details;  // detail lines wait until the verdict line is out

void verdict(int crit, bool ok, const std::string& what, double seconds) {
  std::printf("CRIT %d %s: %s (%.1f s)\n", crit, ok ? "PASS" : "FAIL", what.c_str(), seconds);
  if (!ok) {
    if (kDocumentedFailures.count(crit))
      std::printf("  documented failure, see README\n");
    else
      ++g_unexpected;
  }
  std::fputs(g_details.c_str(), stdout);
  g_details.clear();
  std::fflush(stdout);
}

template <class... A>
void detail(const char* fmt, A... a) {
  std::string line = "  ";
  if constexpr (sizeof...(A) == 0) {
    line += fmt;
  } else {
    const int n = std::snprintf(nullptr, 0, fmt, a...);
    std::string buf(n + 1, '\0');
    std::snprintf(buf.data(), buf.size(), fmt, a...);
    buf.resize(n);
    line += buf;
  }
  g_details += line + "\n";
}

class Clock {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

IndicatorSet ball1(double c, double r) {
  IndicatorSet s(1);
  s.add_ball({c, 0.0, 0.0}, r);
  return s;
}

IndicatorSet shell1(double r_in, double r_out) {
  IndicatorSet s(1);
  s.add_shell({0.0, 0.0, 0.0}, r_in, r_out);
  return s;
}

double final_quarter_sup(const Trajectory& t, Field f) {
  double m = 0.0;
  const std::size_t from = t.snapshots.size() - t.snapshots.size() / 4;
  for (std::size_t k = from; k < t.snapshots.size(); ++k)
    for (double x : (f == Field::u ? t.snapshots[k].u : t.snapshots[k].v)) m = std::max(m, std::abs(x));
  return m;
}

// ---------------------------------------------------------------- 1

Trajectory crit1() {
  Clock clk;
  const ModelParams p{1.0, 1.0, 2.0, 2.0};
  ScenarioSpec sc;
  sc.kind = ScenarioSpec::Kind::C1;
  sc.U = ball1(-30.0, 10.0);
  sc.V = ball1(30.0, 10.0);
  RunOptions o;
  o.threads = 2;
  Trajectory t = run(Grid::line(400.0, 0.2), sc, p, 150.0, 1.0, o);
  const double cv = fit_speed(track_level(t, Field::v, 0.5, {1.0, 0.0, 0.0})).speed;
  const double cu = fit_speed(track_level(t, Field::u, 0.5, {-1.0, 0.0, 0.0})).speed;
  const bool ok = cv >= 1.85 && cv <= 2.02 && cu >= 1.85 && cu <= 2.02 && clk.seconds() <= 60.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "KPP speeds: v %.4f, u %.4f, both in [1.85, 2.02] (c_v = c_u = 2)", cv, cu);
  detail("line L=400 h=0.2 T=150, d=r=1 a=b=2, U=B(-30,10) V=B(30,10); v tracked rightward, u leftward");
  verdict(1, ok, buf, clk.seconds());
  return t;
}

// ---------------------------------------------------------------- 2

void crit2() {
  Clock clk;
  const FrontProfile f = solve_bistable_front({1.0, 1.0, 2.0, 2.0});
  char buf[128];
  std::snprintf(buf, sizeof buf, "symmetric bistable speed |c_uv| = %.2e <= 1e-6", std::abs(f.speed));
  verdict(2, std::abs(f.speed) <= 1e-6, buf, clk.seconds());
}

// ---------------------------------------------------------------- 3

void crit3() {
  Clock clk;
  bool ok = true;
  for (const ModelParams& p : {ModelParams{1.0, 1.0, 1.5, 5.0}, ModelParams{2.0, 1.0, 1.5, 3.0}}) {
    Clock one;
    const double c_bvp = solve_bistable_front(p).speed;
    ScenarioSpec sc;
    sc.kind = ScenarioSpec::Kind::C2;
    sc.U = IndicatorSet(1);
    sc.U.add_half_space({1.0, 0.0, 0.0}, 0.0);
    RunOptions o;
    o.threads = 2;
    const Trajectory t = run(Grid::line(250.0, 0.2), sc, p, 200.0, 1.0, o);
    const double c_sim = fit_speed(track_level(t, Field::u, 0.5, {1.0, 0.0, 0.0})).speed;
    const double rel = std::abs(c_sim - c_bvp) / c_bvp;
    const bool this_ok = c_bvp > 0.0 && rel <= 0.02 && one.seconds() <= 120.0;
    ok = ok && this_ok;
    detail("(d,r,a,b)=(%g,%g,%g,%g): c_bvp %.5f, c_sim %.5f, rel diff %.3f%% (%.1f s)", p.d, p.r, p.a, p.b, c_bvp,
           c_sim, 100.0 * rel, one.seconds());
  }
  verdict(3, ok, "BVP speed vs 1D front tracking within 2% at T=200 (line L=250 h=0.2, C2 half-line)",
          clk.seconds());
}

// ---------------------------------------------------------------- 4

void crit4() {
  Clock clk;
  const ModelParams p{4.0, 1.0, 1.5, 5.0};
  const Speeds sp = validate(p);
  ScenarioSpec sc;
  sc.kind = ScenarioSpec::Kind::C1;
  sc.U = ball1(0.0, 10.0);
  sc.V = shell1(15.0, 25.0);
  RunOptions o;
  o.threads = 4;
  const Trajectory t = run(Grid::radial(2, 600.0, 0.25), sc, p, 100.0, 1.0, o);
  const double c = fit_speed(track_level(t, Field::u, 0.5, {1.0, 0.0, 0.0})).speed;
  const double vmax = final_quarter_sup(t, Field::v);
  const ZoneReport z = check_zones(t, sp, {0.5 * sp.c_u, 1.2 * sp.c_u}, 0.05);
  const bool speed_ok = c >= 0.925 * sp.c_u && c <= 1.01 * sp.c_u;
  char buf[200];
  std::snprintf(buf, sizeof buf, "c_u > c_v: u speed %.4f in [%.3f, %.3f], final-quarter sup|v| %.2e < 0.05", c,
                0.925 * sp.c_u, 1.01 * sp.c_u, vmax);
  detail("radial N=2 L=600 h=0.25 T=100, (d,r,a,b)=(4,1,1.5,5), U=B(0,10) V=shell(15,25)");
  for (const auto& zr : z.zones) detail("zone %s: max %s = %.3e (%s)", zr.name.c_str(), zr.quantity.c_str(), zr.max_sup,
                                        zr.pass ? "pass" : "fail");
  verdict(4, speed_ok && vmax < 0.05 && z.pass, buf, clk.seconds());
}

// ---------------------------------------------------------------- 5

void crit5() {
  Clock clk;
  const ModelParams p{0.25, 0.25, 1.5, 8.0};
  Speeds sp = validate(p);
  const double c_uv = solve_bistable_front(p).speed;
  sp.c_uv = c_uv;
  ScenarioSpec sc;
  sc.kind = ScenarioSpec::Kind::C1;
  sc.U = ball1(0.0, 30.0);
  sc.V = shell1(35.0, 45.0);
  RunOptions o;
  o.threads = 4;
  const Trajectory t = run(Grid::radial(2, 600.0, 0.25), sc, p, 200.0, 2.0, o);
  const ZoneReport z = check_zones(t, sp, {0.5 * c_uv, 2.0 * c_uv, 0.8 * sp.c_v, 1.2 * sp.c_v}, 0.05);
  char buf[200];
  std::snprintf(buf, sizeof buf, "c_v > c_u, c_uv = %.4f > 0: three-zone report, tolerance 0.05", c_uv);
  detail("radial N=2 L=600 h=0.25 T=200, (d,r,a,b)=(0.25,0.25,1.5,8), U=B(0,30) V=shell(35,45); %s",
         z.note.c_str());
  for (const auto& zr : z.zones)
    detail("zone %s [%.3f t, %.3f t]: max %s = %.3e (%s)", zr.name.c_str(), zr.c_lo, zr.c_hi, zr.quantity.c_str(),
           zr.max_sup, zr.pass ? "pass" : "fail");
  verdict(5, z.pass && c_uv > 0.0, buf, clk.seconds());
}

// ---------------------------------------------------------------- 6

void crit6() {
  Clock clk;
  constexpr double pi = std::numbers::pi;
  const double c_uv = solve_bistable_front({1.0, 2.0, 1.5, 2.0}).speed;
  bool ok = true;

  auto agreement = [&](const DirectionClassification& cls, double scale) {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> U(-scale, scale);
    int agree = 0;
    for (int i = 0; i < 10000; ++i) {
      const auto m = envelope_membership(cls, c_uv, {U(rng), U(rng), 0.0});
      agree += m.route_a == m.route_b;
    }
    return agree / 10000.0;
  };

  {
    IndicatorSet s(2);
    s.add_ball({1.0, -2.0, 0.0}, 5.0);
    const auto cls = classify_directions(s);
    double worst = 0.0;
    for (const auto& e : cls.directions) worst = std::max(worst, std::abs(speed_function(cls, c_uv, e) / c_uv - 1.0));
    const double ag = agreement(cls, 4.0 * c_uv);
    ok = ok && worst <= 0.01 && ag >= 0.99;
    detail("bounded B((1,-2),5): max rel err of w vs c_uv %.2e over 512 directions, route A = B on %.2f%%", worst,
           100.0 * ag);
  }
  {
    IndicatorSet s(2);
    s.add_half_space({1.0, 0.0, 0.0}, 0.0);
    const auto cls = classify_directions(s);
    // w(n) = c_uv along the normal; at angle beta from the boundary the
    // planar front gives c_uv / sin(beta), the cone formula with alpha = 90deg
    double worst = 0.0;
    for (double deg : {90.0, 75.0, 60.0, 45.0}) {
      for (double sign : {1.0, -1.0}) {
        const double beta = deg * pi / 180.0;
        const double w = speed_function(cls, c_uv, {std::sin(beta), sign * std::cos(beta), 0.0});
        worst = std::max(worst, std::abs(w / (c_uv / std::sin(beta)) - 1.0));
      }
    }
    const double w_normal = speed_function(cls, c_uv, {1.0, 0.0, 0.0});
    std::size_t inf_ok = 0, inf_total = 0;
    for (const auto& e : cls.directions) {
      if (e[0] < -0.05) {
        ++inf_total;
        inf_ok += std::isinf(speed_function(cls, c_uv, e));
      }
    }
    const double ag = agreement(cls, 4.0 * c_uv);
    ok = ok && std::abs(w_normal / c_uv - 1.0) <= 0.01 && worst <= 0.01 && inf_ok == inf_total && ag >= 0.99;
    detail("half-space x<=0: w(n)/c_uv - 1 = %.2e; at 45..90deg from the boundary max rel err vs c_uv/sin(beta) "
           "%.2e; %zu/%zu inward directions give +inf; route A = B on %.2f%%",
           w_normal / c_uv - 1.0, worst, inf_ok, inf_total, 100.0 * ag);
  }
  {
    const double alpha = pi / 6;
    IndicatorSet s(2);
    s.add_cone({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, alpha);
    const auto cls = classify_directions(s);
    double worst = 0.0;
    for (double deg : {45.0, 60.0, 75.0}) {
      for (double sign : {1.0, -1.0}) {
        const double th = alpha + deg * pi / 180.0;
        const double w = speed_function(cls, c_uv, {std::cos(th), sign * std::sin(th), 0.0});
        const double closed = c_uv / std::sin(th - alpha);
        worst = std::max(worst, std::abs(w / closed - 1.0));
      }
    }
    const bool inside_inf = std::isinf(speed_function(cls, c_uv, {1.0, 0.1, 0.0}));
    const double ag = agreement(cls, 4.0 * c_uv);
    ok = ok && worst <= 0.01 && inside_inf && ag >= 0.99;
    detail("cone alpha=30deg: w vs c_uv/sin(theta-alpha) at theta-alpha in {45,60,75} deg, max rel err %.2e; "
           "route A = B on %.2f%%",
           worst, 100.0 * ag);
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "geometry fixtures, c_uv = %.5f, 512 directions, 10^4 points each", c_uv);
  verdict(6, ok, buf, clk.seconds());
}

// ---------------------------------------------------------------- 7

void crit7() {
  Clock clk;
  const ModelParams p{1.0, 2.0, 1.5, 2.0};
  const FrontProfile prof = solve_bistable_front(p);
  bool scans_ok = true, consts_ok = true;
  DeltaCheck fields;
  OrderingCheck ord_sub, ord_super;
  DeltaCheck on_solution;
  for (CertKind k : {CertKind::sub, CertKind::super}) {
    const bool sub = k == CertKind::sub;
    const CertificateParams c = assemble_certificate(prof, 0.1, k, 2);
    std::size_t failed = 0;
    for (const auto& cc : check_constants(c, prof)) failed += !cc.ok;
    consts_ok = consts_ok && failed == 0;
    ScanOptions so;  // t in [0, 50], x in [0, 3R]
    const ResidualReport r = residual_scan(c, prof, so);
    scans_ok = scans_ok && r.verdict == Verdict::pass;
    detail("%s: delta %.3e, M %.3g, omega %.3e, R %.4g, constants failing %zu", sub ? "sub" : "super", c.delta, c.M,
           c.omega, c.R, failed);
    detail("%s scan over t<=%g, x<=%.4g: %s, %s N1 = %.3e, %s N2 = %.3e, violations %zu, inconclusive %zu",
           sub ? "sub" : "super", r.t_max, r.x_max, verdict_name(r.verdict), sub ? "max" : "min", r.n1_extreme,
           sub ? "min" : "max", r.n2_extreme, r.violations, r.noisy);

    RunOptions ro;
    ro.monitor = false;
    ro.threads = 4;
    if (sub) {
      const Grid g = Grid::radial(2, c.rho + 100.0, 0.5);
      const auto lo = run_from(g, certificate_state(c, prof, g), p, 50.0, 5.0, ro);
      const auto hi = run_from(g, lemma_initial_state(c, g), p, 50.0, 5.0, ro);
      ord_sub = check_ordering(hi, lo);
    } else {
      fields = check_delta_conclusions(c, prof);
      const Grid g = Grid::radial(2, c.R + 100.0, 0.5);
      const double T = std::min(c.T_max, 200.0);
      const auto lo = run_from(g, lemma_initial_state(c, g), p, T, 2.0, ro);
      const auto hi = run_from(g, certificate_state(c, prof, g), p, T, 2.0, ro);
      ord_super = check_ordering(hi, lo);
      on_solution = check_delta_on_solution(c, lo);
    }
  }
  detail("delta conclusions on the assembled supersolution: u<=2delta %s, u<=delta after T_eps %s, "
         "v>=1-2delta %s (worst %.6f), v>=1-delta after T_eps %s (worst %.6f)",
         fields.u1 ? "pass" : "fail", fields.u2 ? "pass" : "fail", fields.v1 ? "pass" : "fail", fields.worst_v1,
         fields.v2 ? "pass" : "fail", fields.worst_v2);
  detail("  v bounds with p2 = 2b beyond M, 1-(1+2b)delta and 1-(1/2+b)delta: %s / %s",
         fields.v1_corrected ? "pass" : "fail", fields.v2_corrected ? "pass" : "fail");
  detail("delta conclusions on the simulated solution from the step data: %s (%zu points)",
         on_solution.literal() ? "pass" : "fail", on_solution.points);
  detail("ordering preserved, sub: %zu violations over %zu snapshots; super: %zu over %zu",
         ord_sub.violations, ord_sub.snapshots, ord_super.violations, ord_super.snapshots);
  const bool ok = scans_ok && consts_ok && fields.literal();
  verdict(7, ok,
          "certificates at (d,r,a,b)=(1,2,1.5,2), eps=0.1, N=2: residual scans and delta conclusions on the "
          "assembled supersolution",
          clk.seconds());
}

// ---------------------------------------------------------------- 8

void crit8(const Trajectory& t1) {
  Clock clk;
  const auto cp = props::comparison_principle(100);
  detail("comparison principle: %zu pairs, %zu violations", cp.cases, cp.violations);
  const auto eb = props::exponential_bounds(t1);
  detail("exponential bound on all %zu snapshots of the criterion-1 run (u, v; both half-lines): %s, worst excess "
         "%.2e; corrupted snapshot %s",
         t1.snapshots.size(), eb.all_ok ? "holds" : "violated", eb.worst_excess,
         eb.mutation_caught ? "detected" : "missed");
  const auto er = props::erosion_monotone(40, 2500);
  detail("erosion monotonicity: %zu point checks, %zu violations", er.cases, er.violations);
  const double d1 = delta0({1, 1, 2, 2}), d2 = delta0({1, 1, 3, 2});
  const bool golden = std::abs(d1 - 1.0 / 36.0) < 1e-15 && std::abs(d2 - 1.0 / 52.0) < 1e-15;
  detail("delta0: %.15f (1/36), %.15f (1/52)", d1, d2);
  const auto an = props::antisymmetry({{1.5, 5.0}, {2.0, 3.0}, {1.2, 4.0}, {1.5, 2.0}});
  detail("antisymmetry at d=r=1: worst |c(a,b)+c(b,a)| = %.2e", an.worst);
  const bool ok = cp.violations == 0 && eb.all_ok && eb.mutation_caught && er.violations == 0 && golden &&
                  an.worst <= 1e-5;
  verdict(8, ok, "property suites", clk.seconds());
}

}  // namespace

int main() {
  const Trajectory t1 = crit1();
  crit2();
  crit3();
  crit4();
  crit5();
  crit6();
  crit7();
  crit8(t1);
  std::printf("unexpected failures: %d\n", g_unexpected);
  return g_unexpected == 0 ? 0 : 1;
}
