#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "lvspread/certificates.hpp"
#include "lvspread/error.hpp"

using namespace lvs;

namespace {

const FrontProfile& profile() {
  static const FrontProfile p = solve_bistable_front({1.0, 2.0, 1.5, 2.0});
  return p;
}

Trajectory single(const Grid& g, const ModelParams& pm, GridState s) {
  Trajectory t;
  t.grid = g;
  t.params = pm;
  t.snapshots.push_back(std::move(s));
  return t;
}

}  // namespace

TEST_CASE("ramp clauses") {
  for (int N : {1, 2, 3}) {
    const RampFunction r = build_ramp(0.1, N, 2.0);
    const RampCheck c = check_ramp(r, 20001);
    CHECK(c.ok());
    CHECK(c.max_curvature <= 0.05 + 1e-12);
    CHECK(r.h(3.0 * r.H) == doctest::Approx(3.0 * r.H));
    CHECK(r.dh(0.1 * r.r0) == 0.0);
  }
  CHECK_THROWS(build_ramp(0.0, 2, 1.0));
}

TEST_CASE("transition pair") {
  CHECK(transition_bound(1.0, 0.5) == doctest::Approx(0.4));
  CHECK(transition_bound(0.1, 0.0) == doctest::Approx(0.5));
  CHECK(transition_bound(0.1, -1.9) == doctest::Approx(1.0));
  const TransitionPair t = build_transitions(5.0, 1.5, 2.0, 1.0, 0.2);
  CHECK(t.p1(-t.M) == doctest::Approx(3.0));
  CHECK(t.p1(t.M) == doctest::Approx(1.0));
  CHECK(t.p2(-t.M) == doctest::Approx(1.0));
  CHECK(t.p2(t.M) == doctest::Approx(4.0));
  CHECK(t.p1(-2.0 * t.M) == doctest::Approx(3.0));
  double m1 = 0.0, m2 = 0.0;
  for (int i = -1000; i <= 1000; ++i) {
    const double x = t.M * i / 1000.0;
    m1 = std::max(m1, std::abs(t.dp2(x)));
    m2 = std::max(m2, std::abs(t.d2p2(x)));
  }
  CHECK(m1 == doctest::Approx(t.p2n1).epsilon(1e-3));
  CHECK(m2 == doctest::Approx(t.p2n2).epsilon(1e-2));
  // M is raised until every norm fits under the bound
  CHECK(t.M >= 5.0);
  for (double n : {t.p1n1, t.p1n2, t.p2n1, t.p2n2}) CHECK(n <= t.bound * (1.0 + 1e-12));
}

TEST_CASE("assembled constants re-check") {
  for (CertKind k : {CertKind::sub, CertKind::super}) {
    const CertificateParams c = assemble_certificate(profile(), 0.1, k, 2);
    CHECK(c.delta > 0.0);
    CHECK(c.delta <= c.delta0);
    CHECK(c.M > 0.0);
    CHECK(c.omega >= c.omega_printed);
    for (const auto& cc : check_constants(c, profile())) {
      INFO(cc.name << " " << cc.lhs << " " << cc.rhs);
      CHECK(cc.ok);
    }
    std::ostringstream os;
    write_certificate(os, c);
    CHECK(os.str().find("delta") != std::string::npos);
  }
  CHECK_THROWS(assemble_certificate(profile(), -0.1, CertKind::sub, 2));
}

TEST_CASE("translated profile keeps the speed") {
  const CertificateParams c = assemble_certificate(profile(), 0.1, CertKind::super, 2);
  const FrontProfile q = certificate_profile(c, profile());
  CHECK(q.speed == profile().speed);
  CHECK(q.xi.front() == doctest::Approx(profile().xi.front() - c.shift));
  const ProfileInterpolant P(profile()), Q(q);
  CHECK(Q(0.3).phi == doctest::Approx(P(0.3 + c.shift).phi).epsilon(1e-10));
}

TEST_CASE("t = 0 order against the step data") {
  const ModelParams& pm = profile().params;
  {
    const CertificateParams c = assemble_certificate(profile(), 0.1, CertKind::super, 2);
    const Grid g = Grid::radial(2, c.R + 50.0, 0.5);
    const auto oc = check_ordering(single(g, pm, certificate_state(c, profile(), g)), single(g, pm, lemma_initial_state(c, g)));
    CHECK(oc.violations == 0);
  }
  {
    const CertificateParams c = assemble_certificate(profile(), 0.1, CertKind::sub, 2);
    const Grid g = Grid::radial(2, c.rho + 50.0, 0.5);
    const auto oc = check_ordering(single(g, pm, lemma_initial_state(c, g)), single(g, pm, certificate_state(c, profile(), g)));
    CHECK(oc.violations == 0);
  }
}

TEST_CASE("ordering check detects a defect") {
  const Grid g = Grid::line(5.0, 0.5);
  const ModelParams pm{1.0, 1.0, 2.0, 2.0};
  GridState hi{0.0, std::vector<double>(g.n, 0.8), std::vector<double>(g.n, 0.2)};
  GridState lo{0.0, std::vector<double>(g.n, 0.5), std::vector<double>(g.n, 0.4)};
  CHECK(check_ordering(single(g, pm, hi), single(g, pm, lo)).violations == 0);
  lo.v[3] = 0.1;
  const auto oc = check_ordering(single(g, pm, hi), single(g, pm, lo));
  CHECK(oc.violations == 1);
  CHECK(oc.worst == doctest::Approx(0.1));
}

TEST_CASE("short residual scan") {
  const CertificateParams c = assemble_certificate(profile(), 0.1, CertKind::super, 2);
  ScanOptions o;
  o.t_max = 5.0;
  o.n_t = 6;
  o.n_coarse = 1500;
  const ResidualReport r = residual_scan(c, profile(), o);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.regions.size() == 3);
  std::ostringstream os;
  write_residual_report(os, r);
  CHECK(os.str().find("verdict") != std::string::npos);
}
