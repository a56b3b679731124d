#include "lvspread/certificates.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <tuple>

#include "interp.hpp"
#include "lvspread/error.hpp"

namespace lvs {

namespace {

// cubic smoothstep and derivatives
double s3(double x) { return x * x * (3.0 - 2.0 * x); }
double ds3(double x) { return 6.0 * x * (1.0 - x); }

// quintic smoothstep and derivatives
double s5(double x) { return x * x * x * (10.0 + x * (-15.0 + 6.0 * x)); }
double ds5(double x) { return 30.0 * x * x * (1.0 - x) * (1.0 - x); }
double d2s5(double x) { return 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x); }

constexpr double kS5d1 = 1.875;  // max s5'
const double kS5d2 = 10.0 / std::sqrt(3.0);  // max |s5''|

}  // namespace

// ------------------------------------------------------------------ ramp

double RampFunction::dh(double r) const {
  if (r <= r0) return 0.0;
  if (r >= H) return 1.0;
  return s3((r - r0) / (H - r0));
}

double RampFunction::d2h(double r) const {
  if (r <= r0 || r >= H) return 0.0;
  return ds3((r - r0) / (H - r0)) / (H - r0);
}

double RampFunction::h(double r) const {
  if (r >= H) return r;
  // h(r) = H - ∫_r^H h'
  const double w = H - r0;
  auto prim = [&](double s) {  // ∫_{r0}^{s} h'
    if (s <= r0) return 0.0;
    const double x = (s - r0) / w;
    return w * (x * x * x - 0.5 * x * x * x * x);
  };
  return H - (prim(H) - prim(r));
}

double RampFunction::curvature(double r) const {
  if (r <= 0.0) return 0.0;
  return std::max(d, 1.0) * (static_cast<double>(N - 1) / r * dh(r) + d2h(r));
}

RampFunction build_ramp(double eps, int N, double d) {
  if (!(eps > 0.0)) throw ValidationError("eps", "eps must be positive");
  if (N < 1) throw ValidationError("N", "dimension must be >= 1");
  if (!(d > 0.0)) throw ValidationError("d", "d must be positive");
  RampFunction ramp;
  ramp.eps = eps;
  ramp.N = N;
  ramp.d = d;
  // curvature <= max(d,1)(2(N-1)/H + 3/H) with r0 = H/2
  double H = 2.0 * std::max(d, 1.0) * (2.0 * N + 1.0) / eps;
  for (int attempt = 0; attempt <= 4; ++attempt) {
    ramp.H = H;
    ramp.r0 = 0.5 * H;
    ramp.h0 = ramp.h(0.0);
    if (check_ramp(ramp, 20001).ok()) return ramp;
    H *= 2.0;
  }
  throw NumericError("ramp construction failed after 4 doublings of H_eps");
}

RampCheck check_ramp(const RampFunction& ramp, std::size_t points) {
  RampCheck c;
  c.slope_ok = c.identity_ok = c.curvature_ok = c.sandwich_ok = true;
  const double top = 2.0 * ramp.H;
  const double tol = 1e-12 * std::max(1.0, top);
  for (std::size_t i = 0; i < points; ++i) {
    const double r = top * static_cast<double>(i) / static_cast<double>(points - 1);
    const double s = ramp.dh(r);
    if (s < 0.0 || s > 1.0) c.slope_ok = false;
    if (r <= ramp.r0 && s != 0.0) c.slope_ok = false;
    const double hr = ramp.h(r);
    if (r >= ramp.H && std::abs(hr - r) > tol) c.identity_ok = false;
    if (hr < r - tol || hr > r + ramp.h0 + tol) c.sandwich_ok = false;
    const double k = ramp.curvature(r);
    c.max_curvature = std::max(c.max_curvature, k);
    if (k > 0.5 * ramp.eps) c.curvature_ok = false;
  }
  return c;
}

// ----------------------------------------------------------- transitions

double TransitionPair::p1(double xi) const {
  if (xi <= -M) return 2.0 * a;
  if (xi >= M) return 1.0;
  return 2.0 * a + (1.0 - 2.0 * a) * s5((xi + M) / (2.0 * M));
}
double TransitionPair::dp1(double xi) const {
  if (xi <= -M || xi >= M) return 0.0;
  return (1.0 - 2.0 * a) * ds5((xi + M) / (2.0 * M)) / (2.0 * M);
}
double TransitionPair::d2p1(double xi) const {
  if (xi <= -M || xi >= M) return 0.0;
  return (1.0 - 2.0 * a) * d2s5((xi + M) / (2.0 * M)) / (4.0 * M * M);
}
double TransitionPair::p2(double xi) const {
  if (xi <= -M) return 1.0;
  if (xi >= M) return 2.0 * b;
  return 1.0 + (2.0 * b - 1.0) * s5((xi + M) / (2.0 * M));
}
double TransitionPair::dp2(double xi) const {
  if (xi <= -M || xi >= M) return 0.0;
  return (2.0 * b - 1.0) * ds5((xi + M) / (2.0 * M)) / (2.0 * M);
}
double TransitionPair::d2p2(double xi) const {
  if (xi <= -M || xi >= M) return 0.0;
  return (2.0 * b - 1.0) * d2s5((xi + M) / (2.0 * M)) / (4.0 * M * M);
}

double transition_bound(double d, double c_uv) {
  double b = 1.0;
  const double den1 = (1.0 + d) * c_uv + d;
  if (den1 > 0.0) b = std::min(b, 1.0 / den1);
  b = std::min(b, 1.0 / (c_uv + 2.0));
  return b;
}

TransitionPair build_transitions(double M, double a, double b, double d, double c_uv) {
  if (!(M > 0.0)) throw ValidationError("M", "M must be positive");
  if (!(c_uv > -2.0)) throw DomainError("transition bound needs c_uv > -2");
  TransitionPair tp;
  tp.a = a;
  tp.b = b;
  tp.bound = transition_bound(d, c_uv);
  const double jump = std::max(std::abs(2.0 * a - 1.0), std::abs(2.0 * b - 1.0));
  // Smallest M at which both derivative norms fit under the bound.
  M = std::max({M, jump * kS5d1 / (2.0 * tp.bound), std::sqrt(jump * kS5d2 / (4.0 * tp.bound))});
  tp.M = M;
  tp.p1n1 = std::abs(2.0 * a - 1.0) * kS5d1 / (2.0 * M);
  tp.p1n2 = std::abs(2.0 * a - 1.0) * kS5d2 / (4.0 * M * M);
  tp.p2n1 = std::abs(2.0 * b - 1.0) * kS5d1 / (2.0 * M);
  tp.p2n2 = std::abs(2.0 * b - 1.0) * kS5d2 / (4.0 * M * M);
  return tp;
}

// --------------------------------------------------------- interpolation

ProfileInterpolant::ProfileInterpolant(const FrontProfile& p) {
  n_ = p.xi.size();
  if (n_ < 5) throw ValidationError("profile", "profile too short");
  xi0_ = p.xi.front();
  h_ = p.spacing();
  phi_ = p.phi;
  psi_ = p.psi;
  dphi_.assign(n_, 0.0);
  d2phi_.assign(n_, 0.0);
  dpsi_.assign(n_, 0.0);
  d2psi_.assign(n_, 0.0);
  for (std::size_t i = 1; i + 1 < n_; ++i) {
    dphi_[i] = (phi_[i + 1] - phi_[i - 1]) / (2.0 * h_);
    dpsi_[i] = (psi_[i + 1] - psi_[i - 1]) / (2.0 * h_);
    d2phi_[i] = (phi_[i + 1] - 2.0 * phi_[i] + phi_[i - 1]) / (h_ * h_);
    d2psi_[i] = (psi_[i + 1] - 2.0 * psi_[i] + psi_[i - 1]) / (h_ * h_);
  }
}

ProfileInterpolant::Sample ProfileInterpolant::operator()(double xi) const {
  using detail::lagrange4;
  if (xi <= lo()) return {phi_.front(), 0.0, 0.0, psi_.front(), 0.0, 0.0};
  if (xi >= hi()) return {phi_.back(), 0.0, 0.0, psi_.back(), 0.0, 0.0};
  return {lagrange4(phi_, xi0_, h_, xi),   lagrange4(dphi_, xi0_, h_, xi), lagrange4(d2phi_, xi0_, h_, xi),
          lagrange4(psi_, xi0_, h_, xi),   lagrange4(dpsi_, xi0_, h_, xi), lagrange4(d2psi_, xi0_, h_, xi)};
}

double ProfileInterpolant::noise(double xi) const {
  if (xi <= lo() || xi >= hi()) return 0.0;
  const double a = std::abs(detail::lagrange4(d2phi_, xi0_, h_, xi) - detail::linear(d2phi_, xi0_, h_, xi));
  const double b = std::abs(detail::lagrange4(d2psi_, xi0_, h_, xi) - detail::linear(d2psi_, xi0_, h_, xi));
  return std::max(a, b);
}

// ------------------------------------------------------------- assembly

namespace {

struct Derivs {
  std::vector<double> d1phi, d2phi, d1psi, d2psi;
};

Derivs nodal_derivatives(const FrontProfile& p) {
  const std::size_t n = p.xi.size();
  const double h = p.spacing();
  Derivs d;
  d.d1phi.assign(n, 0.0);
  d.d2phi.assign(n, 0.0);
  d.d1psi.assign(n, 0.0);
  d.d2psi.assign(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d.d1phi[i] = (p.phi[i + 1] - p.phi[i - 1]) / (2.0 * h);
    d.d1psi[i] = (p.psi[i + 1] - p.psi[i - 1]) / (2.0 * h);
    d.d2phi[i] = (p.phi[i + 1] - 2.0 * p.phi[i] + p.phi[i - 1]) / (h * h);
    d.d2psi[i] = (p.psi[i + 1] - 2.0 * p.psi[i] + p.psi[i - 1]) / (h * h);
  }
  return d;
}

// Smallest M such that the tails beyond ±M sit within `tail` of the end
// states and have the convexity signs the construction relies on.
double tail_width(const FrontProfile& p, const Derivs& d, double tail, bool with_curvature) {
  constexpr double kCurvFloor = 1e-8;
  const std::size_t n = p.xi.size();
  const double h = p.spacing();
  double M = h;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double x = p.xi[i];
    bool ok;
    if (x < 0.0) {
      ok = p.phi[i] >= 1.0 - tail && p.psi[i] <= tail;
      if (with_curvature) ok = ok && d.d2phi[i] < kCurvFloor && d.d2psi[i] > -kCurvFloor;
    } else {
      ok = p.psi[i] >= 1.0 - tail && p.phi[i] <= tail;
      if (with_curvature) ok = ok && d.d2phi[i] > -kCurvFloor && d.d2psi[i] < kCurvFloor;
    }
    if (!ok) M = std::max(M, std::abs(x) + h);
  }
  return M;
}

// Largest distance of the profile from its end states beyond ±M.
double tail_level(const FrontProfile& p, double M) {
  double t = 0.0;
  for (std::size_t i = 0; i < p.xi.size(); ++i) {
    if (p.xi[i] <= -M) t = std::max({t, 1.0 - p.phi[i], p.psi[i]});
    else if (p.xi[i] >= M) t = std::max({t, p.phi[i], 1.0 - p.psi[i]});
  }
  return t;
}

double printed_omega(const ModelParams& p, double mu, double k1, double k2) {
  const double rhs = std::max(2.0 * p.a + 2.0 * p.a * (p.b + 1.0) * p.r / mu + 1.0, 2.0 * p.b + 2.0 * p.b * (p.a + 1.0) / mu + 1.0);
  return 2.0 * rhs / std::min(k1, k2);
}

// ω needed by the core-region estimates when each term is carried with
// its own coefficient.
double derived_omega(const CertificateParams& c) {
  const ModelParams& p = c.params;
  const TransitionPair& tp = c.trans;
  const double mu = c.mu, dl = c.delta, e2 = 0.5 * c.eps, cu = std::abs(c.c_uv);
  double w1, w2;
  if (c.kind == CertKind::sub) {
    const double den1 = mu * (c.k1 - tp.p1n1 * dl);
    if (!(den1 > 0.0)) return std::numeric_limits<double>::infinity();
    w1 = (2.0 * p.a * mu + p.d * tp.p1n2 + 2.0 * p.a * (p.b + 1.0) * p.r + e2 * tp.p1n1) / den1;
    w2 = (2.0 * p.b * mu + cu * tp.p2n1 + tp.p2n2 + 2.0 * p.b * (p.a + 1.0) + e2 * tp.p2n1) / (mu * c.k2);
  } else {
    w1 = (2.0 * p.a * mu + p.d * tp.p1n2 + 2.0 * p.a * (p.b + 1.0) * p.r + e2 * tp.p1n1) / (mu * c.k1);
    const double den2 = mu * (c.k2 - tp.p2n1 * dl);
    if (!(den2 > 0.0)) return std::numeric_limits<double>::infinity();
    w2 = (2.0 * p.b * mu + (cu + e2) * tp.p2n1 + tp.p2n2 + 2.0 * p.b * (p.a + 1.0) + e2 * tp.p2n1) / den2;
  }
  return std::max(w1, w2);
}

}  // namespace

CertificateParams assemble_certificate(const FrontProfile& profile, double eps, CertKind kind, int N) {
  const ModelParams& p = profile.params;
  validate(p, CompetitionMode::strong);
  const double c = profile.speed;
  if (!(eps > 0.0)) throw ValidationError("eps", "eps must be positive");
  if (kind == CertKind::sub && !(eps < c))
    throw DomainError("subsolution certificate needs 0 < eps < c_uv (requires c_uv > 0)");
  if (N < 1) throw ValidationError("N", "dimension must be >= 1");

  CertificateParams cert;
  cert.kind = kind;
  cert.params = p;
  cert.N = N;
  cert.c_uv = c;
  cert.eps = eps;
  cert.delta0 = delta0(p);
  cert.mu = kind == CertKind::sub ? std::min({p.r / 4.0, 0.25, 0.5 * p.r * (p.a - 1.0), 0.5 * p.b})
                                  : std::min({p.r / 4.0, 0.25, 0.5 * p.r * (p.a - 1.0), 0.5 * (p.b - 1.0)});
  if (kind == CertKind::sub && cert.mu > 0.5 * (p.b - 1.0))
    cert.notes.push_back("mu exceeds (b-1)/2; the xi <= -M estimate for N2 needs b >= 1 + 2 mu");

  const Derivs der = nodal_derivatives(profile);
  const double L = profile.half_length();

  // Window [xL, xR] = shift ± M. Beyond it the tails sit within δ0 with the
  // convexity signs (what the region estimates use; they need the tail level
  // and δ each below δ0). k1, k2 are measured inside, δ = min{δ0, k1/2, k2/2},
  // and the comparison with the step data at t = 0 needs the tails on one
  // side at level δ: super Φ >= 1-2aδ, Ψ <= δ left of xL; sub Φ <= δ,
  // Ψ >= 1-2bδ right of xR. The front is translation invariant, so the
  // window is free to sit off centre; the critical edge is pushed outward
  // until that holds while the other stays as close in as allowed.
  const auto n = profile.xi.size();
  const double h = profile.spacing();
  const double d0 = cert.delta0;
  constexpr double kCurvFloor = 1e-8;
  std::vector<char> left_ok(n, 0), right_ok(n, 0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    left_ok[i] = profile.phi[i] >= 1.0 - d0 && profile.psi[i] <= d0 && der.d2phi[i] < kCurvFloor &&
                 der.d2psi[i] > -kCurvFloor;
    right_ok[i] = profile.psi[i] >= 1.0 - d0 && profile.phi[i] <= d0 && der.d2phi[i] > -kCurvFloor &&
                  der.d2psi[i] < kCurvFloor;
  }
  left_ok[0] = left_ok[1];
  right_ok[n - 1] = right_ok[n - 2];
  // innermost admissible edges: every node beyond them qualifies
  std::size_t iL_in = 0, iR_in = n - 1;
  while (iL_in + 1 < n && left_ok[iL_in + 1]) ++iL_in;
  while (iR_in > 0 && right_ok[iR_in - 1]) --iR_in;
  if (!left_ok[0] || !right_ok[n - 1] || iL_in >= iR_in) {
    std::ostringstream os;
    os << "profile tails too short to measure M (half length " << L << "); solve the front on a longer xi interval";
    throw NumericError(os.str());
  }
  const double M_p = build_transitions(h, p.a, p.b, p.d, c).M;
  const auto width = static_cast<std::size_t>(std::ceil(2.0 * M_p / h - 1e-9));
  const std::size_t margin = n / 8;  // keep clear of the clamped ends
  const bool sub = kind == CertKind::sub;
  // sparse tables for range minima of -Φ' and Ψ'
  std::vector<std::vector<double>> t1{std::vector<double>(n, kInf)}, t2{std::vector<double>(n, kInf)};
  for (std::size_t i = 1; i + 1 < n; ++i) {
    t1[0][i] = -der.d1phi[i];
    t2[0][i] = der.d1psi[i];
  }
  for (std::size_t k = 1; (std::size_t{1} << k) <= n; ++k) {
    const std::size_t w = std::size_t{1} << (k - 1);
    t1.emplace_back(n, kInf);
    t2.emplace_back(n, kInf);
    for (std::size_t i = 0; i + 2 * w <= n; ++i) {
      t1[k][i] = std::min(t1[k - 1][i], t1[k - 1][i + w]);
      t2[k][i] = std::min(t2[k - 1][i], t2[k - 1][i + w]);
    }
  }
  auto range_min = [](const std::vector<std::vector<double>>& t, std::size_t l, std::size_t r) {
    const auto k = static_cast<std::size_t>(std::bit_width(r - l + 1) - 1);
    return std::min(t[k][l], t[k][r + 1 - (std::size_t{1} << k)]);
  };
  const double jump1 = std::abs(2.0 * p.a - 1.0), jump2 = std::abs(2.0 * p.b - 1.0);

  // The critical edge (right for sub, left for super) and the free edge are
  // both scanned; among feasible windows keep the one with the largest δ.
  const std::size_t stride = std::max<std::size_t>(1, n / 2000);
  bool found = false;
  std::size_t iL = 0, iR = 0;
  double best = 0.0;
  for (std::size_t l = margin; l <= iL_in; l += stride) {
    for (std::size_t r = std::max(iR_in, l + width); r + margin < n; r += stride) {
      const double M = 0.5 * h * static_cast<double>(r - l);
      const double k1 = 0.9 * range_min(t1, l, r), k2 = 0.9 * range_min(t2, l, r);
      if (!(k1 > 0.0 && k2 > 0.0)) continue;
      // ||p'|| = jump * 15/8 / (2M)
      const double cap = sub ? k1 / (2.0 * jump1 * kS5d1 / (2.0 * M)) : k2 / (2.0 * jump2 * kS5d1 / (2.0 * M));
      const double dl = std::min(d0, cap);
      const bool init_ok = sub ? profile.phi[r] <= dl && profile.psi[r] >= 1.0 - 2.0 * p.b * dl
                               : profile.phi[l] >= 1.0 - 2.0 * p.a * dl && profile.psi[l] <= dl;
      if (init_ok && dl > best) {
        best = dl;
        iL = l;
        iR = r;
        found = true;
      }
    }
  }
  if (!found) {
    throw NumericError(std::string("no transition window meets the initial comparison: the ") +
                       (sub ? "right" : "left") +
                       " tail decays too slowly against the slope floor (or the xi interval is too short)");
  }
  cert.shift = 0.5 * (profile.xi[iL] + profile.xi[iR]);
  cert.M = 0.5 * (profile.xi[iR] - profile.xi[iL]);
  cert.trans = build_transitions(cert.M, p.a, p.b, p.d, c);
  cert.k1 = 0.9 * range_min(t1, iL, iR);
  cert.k2 = 0.9 * range_min(t2, iL, iR);
  const double delta = best;
  cert.delta = delta;

  cert.omega_printed = printed_omega(p, cert.mu, cert.k1, cert.k2);
  const double w_derived = derived_omega(cert);
  if (!std::isfinite(w_derived)) throw NumericError("core estimate cannot be closed: k - ||p'|| delta <= 0");
  cert.omega = std::max(cert.omega_printed, w_derived);
  if (w_derived > cert.omega_printed)
    cert.notes.push_back("omega raised above the printed rule to close the core-region estimate");

  cert.ramp = build_ramp(eps, N, p.d);
  const double H = cert.ramp.H;
  if (kind == CertKind::sub) {
    cert.R = cert.M + H + cert.omega;
    cert.rho = cert.R + cert.M;
  } else {
    const FrontProfile moved = certificate_profile(cert, profile);
    cert.M_eps = std::max(cert.M, tail_width(moved, nodal_derivatives(moved), 0.5 * delta, false));
    if (cert.M_eps > 0.75 * L) throw NumericError("profile tails too short to measure M_eps; use a longer xi interval");
    const double od = cert.omega * delta;
    cert.R_eps = std::max(H, cert.ramp.h0 + od + cert.M + cert.M_eps);
    constexpr double kHorizon = 50.0;
    const double r_con = 2.0 * (c + eps) * (od + cert.M + cert.M_eps + H) / eps - cert.R_eps;
    cert.R = std::max(cert.R_eps + kHorizon * (c + eps), r_con + 1.0);
    cert.T_eps = std::log(2.0) / cert.mu;
    cert.T_max = (cert.R - cert.R_eps) / (c + eps);
  }
  return cert;
}

FrontProfile certificate_profile(const CertificateParams& c, const FrontProfile& profile) {
  FrontProfile moved = profile;
  for (auto& x : moved.xi) x -= c.shift;
  return moved;
}

std::vector<ConstantCheck> check_constants(const CertificateParams& c, const FrontProfile& original) {
  const FrontProfile profile = certificate_profile(c, original);
  std::vector<ConstantCheck> out;
  const ModelParams& p = c.params;
  auto add = [&](std::string name, double lhs, double rhs) { out.push_back({std::move(name), lhs <= rhs, lhs, rhs}); };
  add("delta <= delta0", c.delta, c.delta0);
  if (c.kind == CertKind::sub) add("delta ||p1'|| <= k1/2", c.delta * c.trans.p1n1, 0.5 * c.k1 * (1.0 + 1e-12));
  else add("delta ||p2'|| <= k2/2", c.delta * c.trans.p2n1, 0.5 * c.k2 * (1.0 + 1e-12));
  const double mu_rule = c.kind == CertKind::sub ? std::min({p.r / 4.0, 0.25, 0.5 * p.r * (p.a - 1.0), 0.5 * p.b})
                                                 : std::min({p.r / 4.0, 0.25, 0.5 * p.r * (p.a - 1.0), 0.5 * (p.b - 1.0)});
  add("mu = min rule", std::abs(c.mu - mu_rule), 1e-15);
  const double lhs_omega = std::max(2.0 * p.a + 2.0 * p.a * (p.b + 1.0) * p.r / c.mu + 1.0,
                                    2.0 * p.b + 2.0 * p.b * (p.a + 1.0) / c.mu + 1.0);
  add("omega rule", lhs_omega, 0.5 * c.omega * std::min(c.k1, c.k2) * (1.0 + 1e-12));
  const double pmax = std::max({c.trans.p1n1, c.trans.p1n2, c.trans.p2n1, c.trans.p2n2});
  add("(p) bound", pmax, transition_bound(p.d, c.c_uv));
  add("ramp clauses", check_ramp(c.ramp).ok() ? 0.0 : 1.0, 0.0);

  // k1, k2 against the profile on |xi| <= M, re-measured
  const Derivs der = nodal_derivatives(profile);
  double m1 = std::numeric_limits<double>::infinity(), m2 = m1;
  for (std::size_t i = 1; i + 1 < profile.xi.size(); ++i) {
    if (std::abs(profile.xi[i]) > c.M) continue;
    m1 = std::min(m1, -der.d1phi[i]);
    m2 = std::min(m2, der.d1psi[i]);
  }
  add("k1 <= min -Phi'", c.k1, m1);
  add("k2 <= min Psi'", c.k2, m2);
  add("tails within delta0 beyond M", tail_level(profile, c.M), c.delta0);
  // t = 0 comparison with the step data, on the critical side
  {
    const ProfileInterpolant prof(profile);
    if (c.kind == CertKind::super) {
      const auto s = prof(-c.M);
      add("1 - Phi(-M) <= 2a delta", 1.0 - s.phi, 2.0 * p.a * c.delta);
      add("Psi(-M) <= delta", s.psi, c.delta);
    } else {
      const auto s = prof(c.M);
      add("Phi(M) <= delta", s.phi, c.delta);
      add("1 - Psi(M) <= 2b delta", 1.0 - s.psi, 2.0 * p.b * c.delta);
    }
  }

  if (c.kind == CertKind::sub) {
    add("R >= M + H + omega", c.M + c.ramp.H + c.omega, c.R * (1.0 + 1e-15));
    add("rho >= R + M", c.R + c.M, c.rho * (1.0 + 1e-15));
  } else {
    const double od = c.omega * c.delta;
    add("R_eps rule", std::max(c.ramp.H, c.ramp.h0 + od + c.M + c.M_eps), c.R_eps * (1.0 + 1e-15));
    add("R >= R_eps", c.R_eps, c.R);
    // strict inequality, written as lhs < rhs with the sides swapped
    add("(Rcon)", od + c.M + c.M_eps + c.ramp.H,
        c.eps * (c.R + c.R_eps) / (2.0 * (c.c_uv + c.eps)) * (1.0 - 1e-15));
    add("M_eps tails within delta/2", tail_width(profile, der, 0.5 * c.delta, false), c.M_eps + 1e-12);
  }
  return out;
}

// ---------------------------------------------------------------- fields

namespace {

struct PointEval {
  double xi;
  double u, v;           // clamped
  bool u_active, v_active;
  double n1, n2;
  double slack1, slack2;
  double noise;
};

PointEval evaluate(const CertificateParams& c, const ProfileInterpolant& prof, double t, double r, bool need_n) {
  const ModelParams& p = c.params;
  const RampFunction& rp = c.ramp;
  const double e = std::exp(-c.mu * t);
  const double dl = c.delta;
  const double od = c.omega * dl;
  const bool sub = c.kind == CertKind::sub;
  const double hr = rp.h(r), h1 = rp.dh(r), h2 = rp.d2h(r);
  const double lap_r = r > 0.0 ? h2 + static_cast<double>(c.N - 1) / r * h1 : 0.0;

  PointEval pe{};
  double xi, xi_t, grad2, lap;
  if (sub) {
    xi = hr - (c.c_uv - 0.5 * c.eps) * t - od * e + od - c.R;
    xi_t = -(c.c_uv - 0.5 * c.eps) + od * c.mu * e;
    lap = lap_r;
  } else {
    xi = -hr - (c.c_uv + 0.5 * c.eps) * t + od * e - od + c.R - c.M;
    xi_t = -(c.c_uv + 0.5 * c.eps) - od * c.mu * e;
    lap = -lap_r;
  }
  grad2 = h1 * h1;
  pe.xi = xi;
  const auto s = prof(xi);
  const TransitionPair& tp = c.trans;
  const double sg = sub ? -1.0 : 1.0;  // u = Φ + sg p1 δe,  v = Ψ - sg p2 δe
  const double U = s.phi + sg * tp.p1(xi) * dl * e;
  const double V = s.psi - sg * tp.p2(xi) * dl * e;
  pe.u = sub ? std::max(U, 0.0) : std::min(U, 1.0);
  pe.v = sub ? std::min(V, 1.0) : std::max(V, 0.0);
  pe.u_active = sub ? U > 0.0 : U < 1.0;
  pe.v_active = sub ? V < 1.0 : V > 0.0;
  if (!need_n) return pe;

  // U(t,x) = F(ξ(t,x), t)
  const double F1 = s.dphi + sg * tp.dp1(xi) * dl * e;
  const double F2 = s.d2phi + sg * tp.d2p1(xi) * dl * e;
  const double Ft = -sg * tp.p1(xi) * dl * c.mu * e;
  const double G1 = s.dpsi - sg * tp.dp2(xi) * dl * e;
  const double G2 = s.d2psi - sg * tp.d2p2(xi) * dl * e;
  const double Gt = sg * tp.p2(xi) * dl * c.mu * e;

  const double ut = F1 * xi_t + Ft;
  const double lu = F2 * grad2 + F1 * lap;
  const double fu = p.r * pe.u * (1.0 - pe.u - p.a * pe.v);
  const double vt = G1 * xi_t + Gt;
  const double lv = G2 * grad2 + G1 * lap;
  const double fv = pe.v * (1.0 - pe.v - p.b * pe.u);
  pe.n1 = ut - p.d * lu - fu;
  pe.n2 = vt - lv - fv;
  pe.slack1 = std::abs(F1 * xi_t) + std::abs(Ft) + std::abs(p.d * F2 * grad2) + std::abs(p.d * F1 * lap) + std::abs(fu);
  pe.slack2 = std::abs(G1 * xi_t) + std::abs(Gt) + std::abs(G2 * grad2) + std::abs(G1 * lap) + std::abs(fv);
  pe.noise = std::max(p.d, 1.0) * grad2 * prof.noise(xi);
  return pe;
}

}  // namespace

CertFields certificate_fields(const CertificateParams& cert, const ProfileInterpolant& prof, double t, double r) {
  const PointEval pe = evaluate(cert, prof, t, r, false);
  return {pe.u, pe.v, pe.xi};
}

// ------------------------------------------------------------------ scan

ResidualReport residual_scan(const CertificateParams& c, const FrontProfile& profile, const ScanOptions& opt) {
  if (opt.n_t < 2 || opt.n_coarse < 10) throw ValidationError("scan", "scan grid too small");
  const ProfileInterpolant prof(certificate_profile(c, profile));
  const bool sub = c.kind == CertKind::sub;
  ResidualReport rep;
  rep.kind = c.kind;
  rep.t_max = sub ? opt.t_max : std::min(opt.t_max, c.T_max);
  rep.x_max = opt.x_factor * c.R;
  const double fine = opt.fine_step > 0.0 ? opt.fine_step : 0.5 * profile.spacing();

  const char* names[3] = {"xi<=-M", "|xi|<=M", "xi>=M"};
  std::vector<RegionStats> reg(3);
  for (int k = 0; k < 3; ++k) {
    reg[k].region = names[k];
    reg[k].n1_extreme = sub ? -kInf : kInf;
    reg[k].n2_extreme = sub ? kInf : -kInf;
    reg[k].n1_worst_margin = -kInf;
    reg[k].n2_worst_margin = -kInf;
  }

  std::vector<double> xs;
  for (std::size_t it = 0; it < opt.n_t; ++it) {
    const double t = rep.t_max * static_cast<double>(it) / static_cast<double>(opt.n_t - 1);
    xs.clear();
    for (std::size_t i = 0; i < opt.n_coarse; ++i)
      xs.push_back(rep.x_max * static_cast<double>(i) / static_cast<double>(opt.n_coarse - 1));
    // Dense points across the front, placed by their ξ value where h(r) = r.
    const double e = std::exp(-c.mu * t);
    const double od = c.omega * c.delta;
    for (double z = prof.lo() - 5.0; z <= prof.hi() + 5.0; z += fine) {
      const double r = sub ? z + c.R + (c.c_uv - 0.5 * c.eps) * t + od * e - od
                           : c.R - c.M - (c.c_uv + 0.5 * c.eps) * t + od * e - od - z;
      if (r >= c.ramp.H && r <= rep.x_max) xs.push_back(r);
    }
    double env = 0.0;
    bool env_seen = false;
    for (double r : xs) {
      const PointEval pe = evaluate(c, prof, t, r, true);
      const int k = pe.xi <= -c.M ? 0 : (pe.xi >= c.M ? 2 : 1);
      RegionStats& R = reg[k];
      const double s1 = opt.rel_slack * pe.slack1 + 1e-12;
      const double s2 = opt.rel_slack * pe.slack2 + 1e-12;
      // violation measured in the direction that breaks the inequality
      const double v1 = sub ? pe.n1 : -pe.n1;
      const double v2 = sub ? -pe.n2 : pe.n2;
      if (pe.u_active) {
        ++R.points1;
        R.n1_extreme = sub ? std::max(R.n1_extreme, pe.n1) : std::min(R.n1_extreme, pe.n1);
        R.n1_worst_margin = std::max(R.n1_worst_margin, v1 - s1);
        if (v1 > s1 + pe.noise) ++rep.violations;
        else if (v1 > s1) ++rep.noisy;
      }
      if (pe.v_active) {
        ++R.points2;
        R.n2_extreme = sub ? std::min(R.n2_extreme, pe.n2) : std::max(R.n2_extreme, pe.n2);
        R.n2_worst_margin = std::max(R.n2_worst_margin, v2 - s2);
        if (v2 > s2 + pe.noise) ++rep.violations;
        else if (v2 > s2) ++rep.noisy;
      }
      // interior, where the profile is flat: decay is pure e^{-μt}
      const bool interior = sub ? pe.xi < prof.lo() : pe.xi > prof.hi();
      if (interior) {
        env = std::max({env, std::abs(pe.n1), std::abs(pe.n2)});
        env_seen = true;
      }
    }
    if (env_seen && env > 0.0) {
      rep.t.push_back(t);
      rep.envelope.push_back(env);
    }
  }

  rep.n1_extreme = sub ? -kInf : kInf;
  rep.n2_extreme = sub ? kInf : -kInf;
  for (const auto& R : reg) {
    if (R.points1) rep.n1_extreme = sub ? std::max(rep.n1_extreme, R.n1_extreme) : std::min(rep.n1_extreme, R.n1_extreme);
    if (R.points2) rep.n2_extreme = sub ? std::min(rep.n2_extreme, R.n2_extreme) : std::max(rep.n2_extreme, R.n2_extreme);
  }
  rep.regions = std::move(reg);

  if (rep.t.size() >= 2) {
    double mt = 0.0, ml = 0.0;
    for (std::size_t i = 0; i < rep.t.size(); ++i) {
      mt += rep.t[i];
      ml += std::log(rep.envelope[i]);
    }
    mt /= static_cast<double>(rep.t.size());
    ml /= static_cast<double>(rep.t.size());
    double stt = 0.0, stl = 0.0;
    for (std::size_t i = 0; i < rep.t.size(); ++i) {
      stt += (rep.t[i] - mt) * (rep.t[i] - mt);
      stl += (rep.t[i] - mt) * (std::log(rep.envelope[i]) - ml);
    }
    rep.envelope_rate = -stl / stt;
  }

  if (rep.violations > 0) rep.verdict = Verdict::fail;
  else if (rep.noisy > 0) rep.verdict = Verdict::inconclusive;
  else rep.verdict = Verdict::pass;
  return rep;
}

namespace {

struct DeltaAccumulator {
  const CertificateParams& c;
  DeltaCheck out;
  explicit DeltaAccumulator(const CertificateParams& cert) : c(cert) {
    out.u1 = out.v1 = out.u2 = out.v2 = out.v1_corrected = out.v2_corrected = true;
  }
  void add(double t, double u, double v) {
    const double dl = c.delta, b = c.params.b;
    ++out.points;
    out.worst_u1 = std::max(out.worst_u1, u);
    out.worst_v1 = std::min(out.worst_v1, v);
    if (u > 2.0 * dl) out.u1 = false;
    if (v < 1.0 - 2.0 * dl) out.v1 = false;
    if (v < 1.0 - (1.0 + 2.0 * b) * dl) out.v1_corrected = false;
    if (t >= c.T_eps) {
      out.worst_u2 = std::max(out.worst_u2, u);
      out.worst_v2 = std::min(out.worst_v2, v);
      if (u > dl) out.u2 = false;
      if (v < 1.0 - dl) out.v2 = false;
      if (v < 1.0 - (0.5 + b) * dl) out.v2_corrected = false;
    }
  }
  double ball(double t) const { return c.R - c.R_eps - (c.c_uv + c.eps) * t; }
};

}  // namespace

DeltaCheck check_delta_conclusions(const CertificateParams& c, const FrontProfile& profile, std::size_t n_t,
                                   std::size_t n_x) {
  if (c.kind != CertKind::super) throw DomainError("delta conclusions apply to the supersolution certificate");
  if (n_t < 2 || n_x < 2) throw ValidationError("scan", "delta check grid too small");
  const ProfileInterpolant prof(certificate_profile(c, profile));
  std::vector<double> ts;
  for (std::size_t i = 0; i < n_t; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n_t - 1);
    ts.push_back(c.T_max * f);
    ts.push_back(std::min(c.T_max, 10.0 / c.mu * f));
  }
  ts.push_back(std::min(c.T_eps, c.T_max));
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  DeltaAccumulator acc(c);
  for (double t : ts) {
    const double rmax = acc.ball(t);
    if (rmax < 0.0) continue;
    for (std::size_t ix = 0; ix < n_x; ++ix) {
      const double r = rmax * static_cast<double>(ix) / static_cast<double>(n_x - 1);
      const CertFields f = certificate_fields(c, prof, t, r);
      acc.add(t, f.u, f.v);
    }
  }
  return acc.out;
}

DeltaCheck check_delta_on_solution(const CertificateParams& c, const Trajectory& traj) {
  if (c.kind != CertKind::super) throw DomainError("delta conclusions apply to the supersolution certificate");
  if (traj.grid.kind != GridKind::radial) throw ValidationError("grid", "delta check on a solution needs a radial grid");
  DeltaAccumulator acc(c);
  for (const auto& st : traj.snapshots) {
    if (st.t > c.T_max) break;
    const double rmax = acc.ball(st.t);
    for (std::size_t k = 0; k < traj.grid.n; ++k) {
      if (traj.grid.coord(k) > rmax) break;
      acc.add(st.t, st.u[k], st.v[k]);
    }
  }
  return acc.out;
}

GridState certificate_state(const CertificateParams& c, const FrontProfile& profile, const Grid& g, double t) {
  if (g.kind != GridKind::radial) throw ValidationError("grid", "certificate states live on radial grids");
  if (g.N != c.N) throw ValidationError("grid", "grid dimension differs from the certificate dimension");
  const ProfileInterpolant prof(certificate_profile(c, profile));
  GridState st;
  st.t = t;
  st.u.resize(g.n);
  st.v.resize(g.n);
  for (std::size_t k = 0; k < g.n; ++k) {
    const CertFields f = certificate_fields(c, prof, t, g.coord(k));
    st.u[k] = f.u;
    st.v[k] = f.v;
  }
  return st;
}

GridState lemma_initial_state(const CertificateParams& c, const Grid& g) {
  if (g.kind != GridKind::radial) throw ValidationError("grid", "certificate states live on radial grids");
  const bool sub = c.kind == CertKind::sub;
  const double rad = sub ? c.rho : c.R;
  GridState st;
  st.u.resize(g.n);
  st.v.resize(g.n);
  for (std::size_t k = 0; k < g.n; ++k) {
    const bool in = g.coord(k) < rad;
    if (sub) {
      st.u[k] = in ? 1.0 - c.delta : 0.0;
      st.v[k] = in ? c.delta : 1.0;
    } else {
      st.u[k] = in ? c.delta : 1.0;
      st.v[k] = in ? 1.0 - c.delta : 0.0;
    }
  }
  return st;
}

OrderingCheck check_ordering(const Trajectory& hi, const Trajectory& lo, double tol) {
  if (hi.snapshots.size() != lo.snapshots.size()) throw ValidationError("trajectory", "snapshot counts differ");
  OrderingCheck out;
  for (std::size_t s = 0; s < hi.snapshots.size(); ++s) {
    const GridState& a = hi.snapshots[s];
    const GridState& b = lo.snapshots[s];
    if (std::abs(a.t - b.t) > 1e-9 || a.u.size() != b.u.size())
      throw ValidationError("trajectory", "trajectories are not on the same grid and clock");
    ++out.snapshots;
    for (std::size_t k = 0; k < a.u.size(); ++k) {
      const double defect = std::max(b.u[k] - a.u[k], a.v[k] - b.v[k]);
      out.worst = std::max(out.worst, defect);
      if (defect > tol) ++out.violations;
    }
  }
  return out;
}

// ------------------------------------------------------- exponential bound

ExponentialBoundResult exponential_bound_check(const Trajectory& traj, Field field, const Point& direction) {
  if (traj.snapshots.empty()) throw ValidationError("trajectory", "trajectory has no snapshots");
  const ModelParams& p = traj.params;
  ExponentialBoundResult res;
  res.lambda = field == Field::u ? std::sqrt(p.r / p.d) : 1.0;
  res.speed = field == Field::u ? 2.0 * std::sqrt(p.d * p.r) : 2.0;
  const Grid& g = traj.grid;
  Point e = direction;
  const double len = std::hypot(e[0], e[1], e[2]);
  if (!(len > 0.0)) throw ValidationError("direction", "direction must be nonzero");
  for (auto& x : e) x /= len;
  // x·e at node k; on the radial grid the worst point of the sphere |x| = r
  auto proj = [&](std::size_t k) {
    if (g.kind == GridKind::radial) return g.coord(k);
    const Point x = g.point(k);
    return x[0] * e[0] + x[1] * e[1];
  };
  const auto& f0 = field == Field::u ? traj.snapshots.front().u : traj.snapshots.front().v;
  double logX = -kInf;
  for (std::size_t k = 0; k < f0.size(); ++k)
    if (f0[k] > 0.0) logX = std::max(logX, std::log(f0[k]) + res.lambda * proj(k));
  if (logX == -kInf) throw DomainError("exponential bound: initial field vanishes");
  res.X = std::exp(logX);
  const double slack = g.h * g.h;
  res.worst_excess = -kInf;
  for (const auto& st : traj.snapshots) {
    const auto& f = field == Field::u ? st.u : st.v;
    for (std::size_t k = 0; k < f.size(); ++k) {
      const double expo = logX - res.lambda * (proj(k) - res.speed * st.t);
      const double bound = expo >= 0.0 ? 1.0 : std::exp(expo);
      const double excess = f[k] - bound;
      if (excess > res.worst_excess) {
        res.worst_excess = excess;
        res.worst_t = st.t;
        res.worst_x = proj(k);
      }
    }
  }
  res.ok = res.worst_excess <= slack;
  return res;
}

// ----------------------------------------------------------------- output

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

void write_certificate(std::ostream& os, const CertificateParams& c) {
  os << std::setprecision(12);
  os << "kind = " << (c.kind == CertKind::sub ? "sub" : "super") << "\n";
  os << "d = " << c.params.d << "\nr = " << c.params.r << "\na = " << c.params.a << "\nb = " << c.params.b << "\n";
  os << "N = " << c.N << "\nc_uv = " << c.c_uv << "\neps = " << c.eps << "\ndelta0 = " << c.delta0
     << "\ndelta = " << c.delta << "\nmu = " << c.mu << "\nomega = " << c.omega << "\nomega_printed_min = "
     << c.omega_printed << "\nM = " << c.M << "\nk1 = " << c.k1 << "\nk2 = " << c.k2 << "\nH_eps = " << c.ramp.H
     << "\nh_eps0 = " << c.ramp.h0 << "\nR = " << c.R << "\n";
  if (c.kind == CertKind::sub) {
    os << "rho = " << c.rho << "\n";
  } else {
    os << "M_eps = " << c.M_eps << "\nR_eps = " << c.R_eps << "\nT_eps = " << c.T_eps << "\nT_max = " << c.T_max
       << "\n";
  }
  os << "p1_norms = " << c.trans.p1n1 << ' ' << c.trans.p1n2 << "\np2_norms = " << c.trans.p2n1 << ' '
     << c.trans.p2n2 << "\np_bound = " << c.trans.bound << "\n";
  for (std::size_t i = 0; i < c.notes.size(); ++i) os << "note_" << i << " = " << c.notes[i] << "\n";
}

void write_residual_report(std::ostream& os, const ResidualReport& rep) {
  const bool sub = rep.kind == CertKind::sub;
  os << std::setprecision(8);
  os << "kind = " << (sub ? "sub" : "super") << "\nt_range = 0 " << rep.t_max << "\nx_range = 0 " << rep.x_max << "\n";
  os << (sub ? "max_N1 = " : "min_N1 = ") << rep.n1_extreme << "\n" << (sub ? "min_N2 = " : "max_N2 = ")
     << rep.n2_extreme << "\n";
  for (const auto& R : rep.regions) {
    os << "[region " << R.region << "]\npoints_N1 = " << R.points1 << "\npoints_N2 = " << R.points2 << "\n";
    os << (sub ? "max_N1 = " : "min_N1 = ") << R.n1_extreme << "\n" << (sub ? "min_N2 = " : "max_N2 = ")
       << R.n2_extreme << "\nworst_margin_N1 = " << R.n1_worst_margin << "\nworst_margin_N2 = " << R.n2_worst_margin
       << "\n";
  }
  os << "violations = " << rep.violations << "\nwithin_noise = " << rep.noisy << "\ninterior_decay_rate = "
     << rep.envelope_rate << "\nverdict = " << verdict_name(rep.verdict) << "\n";
}

}  // namespace lvs
