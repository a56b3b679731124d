#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lvspread/front.hpp"
#include "lvspread/metrics.hpp"
#include "lvspread/model.hpp"
#include "lvspread/simulator.hpp"

namespace lvs {

// h_ε: constant on [0, r0], C² rise with h' = smoothstep on [r0, H], h(r) = r
// beyond H.
struct RampFunction {
  double eps = 0.0;
  int N = 2;
  double d = 1.0;
  double r0 = 0.0;
  double H = 0.0;
  double h0 = 0.0;  // h(0)

  double h(double r) const;
  double dh(double r) const;
  double d2h(double r) const;
  // max(d,1) ((N-1)/r h' + h'') at r (0 at r = 0, where h' vanishes).
  double curvature(double r) const;
};

RampFunction build_ramp(double eps, int N, double d);

struct RampCheck {
  bool slope_ok = false;      // 0 <= h' <= 1, h' = 0 on [0, r0]
  bool identity_ok = false;   // h(r) = r on [H, 2H]
  bool curvature_ok = false;  // curvature <= eps/2
  bool sandwich_ok = false;   // r <= h(r) <= r + h(0)
  double max_curvature = 0.0;
  bool ok() const { return slope_ok && identity_ok && curvature_ok && sandwich_ok; }
};

// Checks the four ramp clauses on `points` samples of [0, 2H].
RampCheck check_ramp(const RampFunction& ramp, std::size_t points = 200001);

// p1: 2a -> 1, p2: 1 -> 2b, quintic smoothstep over [-M, M].
struct TransitionPair {
  double M = 0.0;
  double a = 2.0, b = 2.0;
  double p1n1 = 0.0, p1n2 = 0.0, p2n1 = 0.0, p2n2 = 0.0;  // sup norms of p', p''
  double bound = 0.0;                                     // right side of (p)

  double p1(double xi) const;
  double dp1(double xi) const;
  double d2p1(double xi) const;
  double p2(double xi) const;
  double dp2(double xi) const;
  double d2p2(double xi) const;
};

// min{1, 1/((1+d)c+d), 1/(c+2)}
double transition_bound(double d, double c_uv);
TransitionPair build_transitions(double M, double a, double b, double d, double c_uv);

enum class CertKind { sub, super };

struct CertificateParams {
  CertKind kind = CertKind::sub;
  ModelParams params;
  int N = 2;
  double c_uv = 0.0;
  double eps = 0.0;
  double delta0 = 0.0;
  double delta = 0.0;
  double mu = 0.0;
  double omega = 0.0;
  double omega_printed = 0.0;  // smallest ω allowed by the printed ω rule
  double shift = 0.0;          // profile translate: the certificate uses Φ(ξ + shift)
  double M = 0.0;
  double M_eps = 0.0;          // super only: δ/2 tails
  double k1 = 0.0, k2 = 0.0;
  double R = 0.0;
  double rho = 0.0;            // sub only
  double R_eps = 0.0, T_eps = 0.0, T_max = 0.0;  // super only
  RampFunction ramp;
  TransitionPair trans;
  std::vector<std::string> notes;
};

CertificateParams assemble_certificate(const FrontProfile& profile, double eps, CertKind kind, int N = 2);

// The profile translated by cert.shift; every check below works on this copy.
FrontProfile certificate_profile(const CertificateParams& cert, const FrontProfile& profile);

struct ConstantCheck {
  std::string name;
  bool ok = false;
  double lhs = 0.0, rhs = 0.0;
};
// Re-evaluates the defining inequalities of every constant.
std::vector<ConstantCheck> check_constants(const CertificateParams& cert, const FrontProfile& profile);

// Profile with its two derivatives, built from the nodal values and the
// central differences used by the BVP; constant outside the grid.
class ProfileInterpolant {
 public:
  explicit ProfileInterpolant(const FrontProfile& profile);
  struct Sample {
    double phi, dphi, d2phi, psi, dpsi, d2psi;
  };
  Sample operator()(double xi) const;
  // Spread between cubic and linear interpolation of the second
  // derivatives; used as a local noise estimate.
  double noise(double xi) const;
  double lo() const { return xi0_; }
  double hi() const { return xi0_ + h_ * static_cast<double>(n_ - 1); }

 private:
  double xi0_ = 0.0, h_ = 1.0;
  std::size_t n_ = 0;
  std::vector<double> phi_, dphi_, d2phi_, psi_, dpsi_, d2psi_;
};

struct CertFields {
  double u, v;    // the (clamped) certificate pair
  double xi;      // ξ (sub) or ζ (super)
};
CertFields certificate_fields(const CertificateParams& cert, const ProfileInterpolant& prof, double t, double r);

struct ScanOptions {
  double t_max = 50.0;
  std::size_t n_t = 51;
  double x_factor = 3.0;      // x in [0, x_factor * R]
  std::size_t n_coarse = 6000;
  double fine_step = 0.0;     // 0: profile spacing / 2
  double rel_slack = 1e-3;
};

struct RegionStats {
  std::string region;         // "xi<=-M", "|xi|<=M", "xi>=M"
  std::size_t points1 = 0, points2 = 0;
  double n1_extreme = 0.0;    // max N1 (sub) or min N1 (super)
  double n2_extreme = 0.0;    // min N2 (sub) or max N2 (super)
  double n1_worst_margin = 0.0;  // signed: >0 means violation beyond slack
  double n2_worst_margin = 0.0;
};

enum class Verdict { pass, fail, inconclusive };

struct ResidualReport {
  CertKind kind = CertKind::sub;
  std::vector<RegionStats> regions;
  double n1_extreme = 0.0, n2_extreme = 0.0;
  std::size_t violations = 0;       // beyond slack + noise
  std::size_t noisy = 0;            // beyond slack, within noise
  std::vector<double> t;
  std::vector<double> envelope;     // per t, max |N1|, |N2| over the front core
  double envelope_rate = 0.0;       // fitted decay rate of the envelope
  double t_max = 0.0, x_max = 0.0;
  Verdict verdict = Verdict::fail;
};

ResidualReport residual_scan(const CertificateParams& cert, const FrontProfile& profile, const ScanOptions& options = {});

// (delta1)/(delta2) on the shrinking ball |x| <= R - R_eps - (c_uv+eps)t.
// Literal bounds: u <= 2δ, v >= 1-2δ; after T_eps u <= δ, v >= 1-δ. On the
// certificate pair p2 = 2b beyond M, so the v side only reaches
// 1-(1+2b)δ and 1-(1/2+b)δ; those are reported as the corrected bounds.
struct DeltaCheck {
  bool u1 = false, v1 = false, u2 = false, v2 = false;
  bool v1_corrected = false, v2_corrected = false;
  double worst_u1 = 0.0, worst_v1 = 1.0, worst_u2 = 0.0, worst_v2 = 1.0;
  std::size_t points = 0;
  bool literal() const { return u1 && v1 && u2 && v2; }
  bool corrected() const { return u1 && u2 && v1_corrected && v2_corrected; }
};
// On the assembled supersolution fields. The t grid holds n_t points on
// [0, T_max], T_eps itself, and n_t more on the first 10/mu.
DeltaCheck check_delta_conclusions(const CertificateParams& cert, const FrontProfile& profile, std::size_t n_t = 101,
                                   std::size_t n_x = 2001);
// On a simulated solution started from lemma_initial_state (radial grid).
DeltaCheck check_delta_on_solution(const CertificateParams& cert, const Trajectory& traj);

// Certificate pair at time t on a radial grid.
GridState certificate_state(const CertificateParams& cert, const FrontProfile& profile, const Grid& grid, double t = 0.0);
// Step data the certificate is compared against: sub (1-δ, δ) on B(0,ρ) and
// (0,1) outside; super (δ, 1-δ) on B(0,R) and (1,0) outside.
GridState lemma_initial_state(const CertificateParams& cert, const Grid& grid);

struct OrderingCheck {
  std::size_t snapshots = 0;
  std::size_t violations = 0;
  double worst = 0.0;  // largest order defect seen
};
// hi.u >= lo.u and hi.v <= lo.v at every snapshot and node, up to tol.
OrderingCheck check_ordering(const Trajectory& hi, const Trajectory& lo, double tol = 1e-12);

struct ExponentialBoundResult {
  bool ok = false;
  double X = 0.0;
  double lambda = 0.0;
  double speed = 0.0;
  double worst_excess = 0.0;  // max of field - bound (<= slack when ok)
  double worst_t = 0.0;
  double worst_x = 0.0;
};

// u <= min{X exp(-λ(x·e - c t)), 1} on every snapshot and node, with X
// calibrated on the first snapshot; slack h².
ExponentialBoundResult exponential_bound_check(const Trajectory& traj, Field field, const Point& direction);

void write_certificate(std::ostream& os, const CertificateParams& cert);
void write_residual_report(std::ostream& os, const ResidualReport& rep);
const char* verdict_name(Verdict v);

}  // namespace lvs
