#include "lvspread/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "lvspread/error.hpp"

namespace lvs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Outermost crossing along a sampled ray f(s_0..s_{m-1}), s increasing.
double outermost(const std::vector<double>& s, const std::vector<double>& f, double level) {
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] >= level) {
      if (i + 1 == f.size()) return s[i];
      const double w = (f[i] - level) / (f[i] - f[i + 1]);
      return s[i] + w * (s[i + 1] - s[i]);
    }
  }
  return kNegInf;
}

double bilinear(const Grid& g, const std::vector<double>& f, double x, double y) {
  const double fx = (x + g.L) / g.h, fy = (y + g.L) / g.h;
  const auto i = std::min(static_cast<std::size_t>(std::max(fx, 0.0)), g.n - 2);
  const auto j = std::min(static_cast<std::size_t>(std::max(fy, 0.0)), g.n - 2);
  const double tx = std::clamp(fx - static_cast<double>(i), 0.0, 1.0);
  const double ty = std::clamp(fy - static_cast<double>(j), 0.0, 1.0);
  const std::size_t n = g.n;
  return (1 - tx) * (1 - ty) * f[j * n + i] + tx * (1 - ty) * f[j * n + i + 1] + (1 - tx) * ty * f[(j + 1) * n + i] +
         tx * ty * f[(j + 1) * n + i + 1];
}

}  // namespace

FrontTrack track_level(const Trajectory& traj, Field field, double level, const Point& direction) {
  if (!(level > 0.0 && level < 1.0)) throw ValidationError("level", "level must lie in (0,1)");
  if (traj.snapshots.empty()) throw ValidationError("trajectory", "trajectory has no snapshots");
  FrontTrack tr;
  tr.level = level;
  tr.field = field;
  const Grid& g = traj.grid;
  Point e = direction;
  if (g.kind == GridKind::plane) {
    const double len = std::hypot(e[0], e[1]);
    if (!(len > 0.0)) throw ValidationError("direction", "direction must be nonzero");
    e = {e[0] / len, e[1] / len, 0.0};
  } else if (g.kind == GridKind::line) {
    if (e[0] == 0.0) throw ValidationError("direction", "line grid needs direction +1 or -1");
    e = {e[0] > 0.0 ? 1.0 : -1.0, 0.0, 0.0};
  } else {
    e = {1.0, 0.0, 0.0};
  }
  tr.direction = e;

  std::vector<double> s, f;
  bool any = false;
  for (const auto& st : traj.snapshots) {
    const auto& a = field == Field::u ? st.u : st.v;
    s.clear();
    f.clear();
    if (g.kind == GridKind::radial) {
      for (std::size_t k = 0; k < g.n; ++k) {
        s.push_back(g.coord(k));
        f.push_back(a[k]);
      }
    } else if (g.kind == GridKind::line) {
      const std::size_t mid = g.n / 2;  // node at x = 0 (n is odd)
      for (std::size_t k = 0; k <= mid; ++k) {
        const std::size_t idx = e[0] > 0.0 ? mid + k : mid - k;
        s.push_back(std::abs(g.coord(idx)));
        f.push_back(a[idx]);
      }
    } else {
      // Ray sampled at h/4 until it leaves the square.
      const double smax = g.L / std::max(std::abs(e[0]), std::abs(e[1]));
      const double ds = 0.25 * g.h;
      for (double si = 0.0; si <= smax + 1e-12; si += ds) {
        s.push_back(si);
        f.push_back(bilinear(g, a, si * e[0], si * e[1]));
      }
    }
    const double pos = outermost(s, f, level);
    if (pos != kNegInf) any = true;
    tr.t.push_back(st.t);
    tr.position.push_back(pos);
  }
  if (!any) throw NumericError("empty track: level never attained at any snapshot");
  return tr;
}

SpeedEstimate fit_speed(const FrontTrack& track) {
  if (track.t.empty()) throw ValidationError("track", "empty track");
  const double t_last = track.t.back();
  std::vector<double> ts, ps;
  for (std::size_t i = 0; i < track.t.size(); ++i) {
    if (track.t[i] >= 0.5 * t_last && std::isfinite(track.position[i])) {
      ts.push_back(track.t[i]);
      ps.push_back(track.position[i]);
    }
  }
  if (ts.size() < 8) {
    std::ostringstream os;
    os << "fit_speed needs at least 8 samples in the fit window, got " << ts.size();
    throw ValidationError("track", os.str());
  }
  const double n = static_cast<double>(ts.size());
  double mt = 0.0, mp = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    mt += ts[i];
    mp += ps[i];
  }
  mt /= n;
  mp /= n;
  double stt = 0.0, stp = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    stt += (ts[i] - mt) * (ts[i] - mt);
    stp += (ts[i] - mt) * (ps[i] - mp);
  }
  SpeedEstimate est;
  est.speed = stp / stt;
  est.intercept = mp - est.speed * mt;
  double ss = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double r = ps[i] - (est.intercept + est.speed * ts[i]);
    ss += r * r;
  }
  est.rms_residual = std::sqrt(ss / n);
  est.t1 = ts.front();
  est.t2 = ts.back();
  est.n_samples = ts.size();
  return est;
}

ZoneReport check_zones(const Trajectory& traj, const Speeds& sp, const std::vector<double>& c, double tol) {
  if (traj.snapshots.size() < 4) throw ConfigError("zone check needs at least 4 snapshots");
  if (!(tol > 0.0)) throw ValidationError("tolerance", "zone tolerance must be positive");
  ZoneReport rep;
  rep.tolerance = tol;
  rep.note = "finite-horizon check of a t -> infinity statement; tolerance is an artifact choice";

  enum Q { u_minus_1, u_abs, v_abs, inner13, middle13, outer13 };
  struct Def {
    std::string name;
    double lo, hi;
    Q q;
    std::string qname;
  };
  std::vector<Def> defs;
  const double inf = std::numeric_limits<double>::infinity();
  if (sp.c_u > sp.c_v) {
    rep.theorem = "c_u > c_v";
    if (c.size() != 2) throw ConfigError("fast-u zone check expects c_list = {c_in, c_out}");
    if (!(c[0] > 0.0 && c[0] < sp.c_u && c[1] > sp.c_u))
      throw ConfigError("fast-u zone check needs 0 < c_in < c_u < c_out");
    defs = {{"inner", 0.0, c[0], u_minus_1, "|u-1|"}, {"outer", c[1], inf, u_abs, "|u|"}, {"global", 0.0, inf, v_abs, "|v|"}};
  } else {
    rep.theorem = "c_v > c_u";
    if (c.size() != 4) throw ConfigError("fast-v zone check expects c_list = {c_in, c1, c2, c_out}");
    if (!sp.c_uv) throw ConfigError("fast-v zone check needs c_uv");
    const double cuv = *sp.c_uv;
    if (!(c[0] > 0.0 && c[0] < cuv)) throw ConfigError("fast-v zone check needs 0 < c_in < c_uv");
    if (!(cuv < c[1] && c[1] <= c[2] && c[2] < sp.c_v)) throw ConfigError("fast-v zone check needs c_uv < c1 <= c2 < c_v");
    if (!(c[3] > sp.c_v)) throw ConfigError("fast-v zone check needs c_out > c_v");
    defs = {{"inner", 0.0, c[0], inner13, "|u-1|+|v|"},
            {"middle", c[1], c[2], middle13, "|u|+|v-1|"},
            {"outer", c[3], inf, outer13, "|u|+|v|"}};
  }

  const Grid& g = traj.grid;
  const double r_max = g.kind == GridKind::radial ? g.L : g.L;
  const double T = traj.snapshots.back().t;
  for (const auto& d : defs) {
    const double lo = d.lo * T, hi = std::min(d.hi * T, r_max);
    if (hi - lo < 20.0 * g.h) {
      std::ostringstream os;
      os << "zone '" << d.name << "' collapses: width " << hi - lo << " at t=" << T << " is below 20h";
      throw ConfigError(os.str());
    }
  }

  const std::size_t first = traj.snapshots.size() - std::max<std::size_t>(1, traj.snapshots.size() / 4);
  for (const auto& d : defs) {
    ZoneResult z;
    z.name = d.name;
    z.c_lo = d.lo;
    z.c_hi = d.hi;
    z.quantity = d.qname;
    for (std::size_t s = first; s < traj.snapshots.size(); ++s) {
      const GridState& st = traj.snapshots[s];
      const double lo = d.lo * st.t, hi = d.hi * st.t;
      double m = 0.0;
      std::size_t count = 0;
      for (std::size_t k = 0; k < g.size(); ++k) {
        const double rr = g.radius(k);
        if (rr < lo || rr > hi) continue;
        // For the plane grid the corners reach past L; the outer zone
        // is measured inside the disc |x| <= L only.
        if (g.kind == GridKind::plane && rr > g.L) continue;
        ++count;
        const double u = st.u[k], v = st.v[k];
        double q = 0.0;
        switch (d.q) {
          case u_minus_1: q = std::abs(u - 1.0); break;
          case u_abs: q = std::abs(u); break;
          case v_abs: q = std::abs(v); break;
          case inner13: q = std::abs(u - 1.0) + std::abs(v); break;
          case middle13: q = std::abs(u) + std::abs(v - 1.0); break;
          case outer13: q = std::abs(u) + std::abs(v); break;
        }
        m = std::max(m, q);
      }
      if (count == 0) throw ConfigError("zone '" + d.name + "' contains no grid nodes");
      z.t.push_back(st.t);
      z.sup.push_back(m);
    }
    z.max_sup = *std::max_element(z.sup.begin(), z.sup.end());
    z.pass = z.max_sup <= tol;
    rep.zones.push_back(std::move(z));
  }
  rep.pass = std::all_of(rep.zones.begin(), rep.zones.end(), [](const ZoneResult& z) { return z.pass; });
  return rep;
}

void write_track_csv(std::ostream& os, const FrontTrack& tr) {
  os << std::setprecision(12) << "# field = " << (tr.field == Field::u ? "u" : "v") << "\n# level = " << tr.level
     << "\n# direction = " << tr.direction[0] << ' ' << tr.direction[1] << ' ' << tr.direction[2] << "\nt,position\n";
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    os << tr.t[i] << ',';
    if (std::isfinite(tr.position[i])) os << tr.position[i]; else os << "-inf";
    os << '\n';
  }
}

void write_speed_record(std::ostream& os, const SpeedEstimate& e) {
  os << std::setprecision(12) << "speed = " << e.speed << "\nintercept = " << e.intercept << "\nfit_window = " << e.t1
     << ' ' << e.t2 << "\nsamples = " << e.n_samples << "\nrms_residual = " << e.rms_residual << "\n";
}

void write_zone_report(std::ostream& os, const ZoneReport& rep) {
  os << std::setprecision(8) << "case = " << rep.theorem << "\ntolerance = " << rep.tolerance << "\nnote = " << rep.note
     << "\n";
  for (const auto& z : rep.zones) {
    os << "[zone." << z.name << "]\nquantity = " << z.quantity << "\nc_lo = " << z.c_lo << "\nc_hi = ";
    if (std::isinf(z.c_hi)) os << "inf"; else os << z.c_hi;
    os << "\nmax_sup = " << z.max_sup << "\nsup_series =";
    for (double s : z.sup) os << ' ' << s;
    os << "\npass = " << (z.pass ? "true" : "false") << "\n";
  }
  os << "verdict = " << (rep.pass ? "pass" : "fail") << "\n";
}

}  // namespace lvs
