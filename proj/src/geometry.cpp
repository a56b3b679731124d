#include "lvspread/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "lvspread/error.hpp"

namespace lvs {

namespace {

double dot(const Point& a, const Point& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += a[i] * b[i];
  return s;
}

double norm(const Point& a, int dim) { return std::sqrt(dot(a, a, dim)); }

Point sub(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Point unit(const Point& a, int dim, const char* field) {
  const double n = norm(a, dim);
  if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError(field, std::string(field) + " must be a nonzero vector");
  Point out{};
  for (int i = 0; i < dim; ++i) out[i] = a[i] / n;
  return out;
}

// Angle between q and the unit axis, plus |q|.
std::pair<double, double> polar_about(const Point& q, const Point& axis, int dim) {
  const double len = norm(q, dim);
  if (len == 0.0) return {0.0, 0.0};
  const double c = std::clamp(dot(q, axis, dim) / len, -1.0, 1.0);
  return {std::acos(c), len};
}

double prim_distance(const Primitive& pr, const Point& x, int dim) {
  switch (pr.kind) {
    case Primitive::Kind::ball:
      return std::max(norm(sub(x, pr.p), dim) - pr.s, 0.0);
    case Primitive::Kind::half_space:
      return std::max(dot(pr.p, x, dim) - pr.s, 0.0);
    case Primitive::Kind::cone: {
      const auto [theta, len] = polar_about(sub(x, pr.p), pr.q, dim);
      if (theta <= pr.s) return 0.0;
      if (theta < pr.s + 0.5 * std::numbers::pi) return len * std::sin(theta - pr.s);
      return len;
    }
    case Primitive::Kind::box: {
      double s = 0.0;
      for (int i = 0; i < dim; ++i) {
        const double e = std::max({pr.p[i] - x[i], 0.0, x[i] - pr.q[i]});
        s += e * e;
      }
      return std::sqrt(s);
    }
    case Primitive::Kind::shell: {
      const double rr = norm(sub(x, pr.p), dim);
      return std::max({pr.s - rr, rr - pr.t, 0.0});
    }
  }
  return kInf;
}

// dist(x, complement of the primitive) for x inside, negative outside.
double prim_depth(const Primitive& pr, const Point& x, int dim) {
  switch (pr.kind) {
    case Primitive::Kind::ball:
      return pr.s - norm(sub(x, pr.p), dim);
    case Primitive::Kind::half_space:
      return pr.s - dot(pr.p, x, dim);
    case Primitive::Kind::cone: {
      const auto [theta, len] = polar_about(sub(x, pr.p), pr.q, dim);
      if (theta > pr.s) return -1.0;
      return len * std::sin(pr.s - theta);
    }
    case Primitive::Kind::box: {
      double m = kInf;
      for (int i = 0; i < dim; ++i) m = std::min({m, x[i] - pr.p[i], pr.q[i] - x[i]});
      return m;
    }
    case Primitive::Kind::shell: {
      const double rr = norm(sub(x, pr.p), dim);
      if (pr.s <= 0.0) return pr.t - rr;
      return std::min(rr - pr.s, pr.t - rr);
    }
  }
  return -1.0;
}

}  // namespace

IndicatorSet::IndicatorSet(int dim) : dim_(dim) {
  if (dim < 1 || dim > 3) throw ValidationError("dim", "set dimension must be 1, 2 or 3");
}

IndicatorSet& IndicatorSet::add_ball(const Point& centre, double radius) {
  if (!(radius >= 0.0)) throw ValidationError("radius", "ball radius must be non-negative");
  Primitive pr;
  pr.kind = Primitive::Kind::ball;
  pr.p = centre;
  pr.s = radius;
  prims_.push_back(pr);
  return *this;
}

IndicatorSet& IndicatorSet::add_half_space(const Point& normal, double offset) {
  // Normalised so that the distance is n·x - offset.
  const double n = norm(normal, dim_);
  Primitive pr;
  pr.kind = Primitive::Kind::half_space;
  pr.p = unit(normal, dim_, "normal");
  pr.s = offset / n;
  prims_.push_back(pr);
  return *this;
}

IndicatorSet& IndicatorSet::add_cone(const Point& apex, const Point& axis, double half_angle) {
  if (dim_ < 2) throw ValidationError("cone", "cones need dimension >= 2");
  if (!(half_angle > 0.0 && half_angle < 0.5 * std::numbers::pi))
    throw ValidationError("half_angle", "cone half angle must lie in (0, pi/2)");
  Primitive pr;
  pr.kind = Primitive::Kind::cone;
  pr.p = apex;
  pr.q = unit(axis, dim_, "axis");
  pr.s = half_angle;
  prims_.push_back(pr);
  return *this;
}

IndicatorSet& IndicatorSet::add_box(const Point& lo, const Point& hi) {
  for (int i = 0; i < dim_; ++i)
    if (!(lo[i] <= hi[i])) throw ValidationError("box", "box min corner must not exceed max corner");
  Primitive pr;
  pr.kind = Primitive::Kind::box;
  pr.p = lo;
  pr.q = hi;
  prims_.push_back(pr);
  return *this;
}

IndicatorSet& IndicatorSet::add_shell(const Point& centre, double r_in, double r_out) {
  if (!(r_in >= 0.0 && r_out >= r_in)) throw ValidationError("shell", "shell needs 0 <= r_in <= r_out");
  Primitive pr;
  pr.kind = Primitive::Kind::shell;
  pr.p = centre;
  pr.s = r_in;
  pr.t = r_out;
  prims_.push_back(pr);
  return *this;
}

bool IndicatorSet::is_bounded() const {
  return std::none_of(prims_.begin(), prims_.end(), [](const Primitive& pr) {
    return pr.kind == Primitive::Kind::half_space || pr.kind == Primitive::Kind::cone;
  });
}

bool IndicatorSet::contains(const Point& x) const { return distance(x) == 0.0; }

double IndicatorSet::distance(const Point& x) const {
  double m = kInf;
  for (const auto& pr : prims_) m = std::min(m, prim_distance(pr, x, dim_));
  return m;
}

double IndicatorSet::depth(const Point& x) const {
  double m = 0.0;
  for (const auto& pr : prims_) m = std::max(m, prim_depth(pr, x, dim_));
  return m;
}

IndicatorSet IndicatorSet::eroded(double rho) const {
  if (!(rho > 0.0)) throw ValidationError("rho", "erosion radius must be positive");
  IndicatorSet out(dim_);
  for (const auto& pr : prims_) {
    Primitive e = pr;
    switch (pr.kind) {
      case Primitive::Kind::ball:
        e.s = pr.s - rho;
        if (e.s < 0.0) continue;
        break;
      case Primitive::Kind::half_space:
        e.s = pr.s - rho;
        break;
      case Primitive::Kind::cone: {
        const double shift = rho / std::sin(pr.s);
        for (int i = 0; i < dim_; ++i) e.p[i] = pr.p[i] + shift * pr.q[i];
        break;
      }
      case Primitive::Kind::box: {
        bool empty = false;
        for (int i = 0; i < dim_; ++i) {
          e.p[i] = pr.p[i] + rho;
          e.q[i] = pr.q[i] - rho;
          if (e.p[i] > e.q[i]) empty = true;
        }
        if (empty) continue;
        break;
      }
      case Primitive::Kind::shell:
        e.s = pr.s > 0.0 ? pr.s + rho : 0.0;
        e.t = pr.t - rho;
        if (e.t < e.s) continue;
        break;
    }
    out.prims_.push_back(e);
  }
  return out;
}

// ------------------------------------------------------------ directions

std::vector<Point> sample_directions(int dim, std::size_t m) {
  std::vector<Point> dirs;
  if (dim == 1) {
    dirs = {Point{1.0, 0.0, 0.0}, Point{-1.0, 0.0, 0.0}};
  } else if (dim == 2) {
    if (m < 64) throw ValidationError("m", "2D classification needs at least 64 directions");
    dirs.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
      dirs[k] = {std::cos(phi), std::sin(phi), 0.0};
    }
  } else {
    if (m < 64) throw ValidationError("m", "3D classification needs at least 64 directions");
    dirs.resize(m);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < m; ++k) {
      const double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(m);
      const double rr = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * static_cast<double>(k);
      dirs[k] = {rr * std::cos(phi), rr * std::sin(phi), z};
    }
  }
  return dirs;
}

double liminf_ratio(const IndicatorSet& set, const Point& xi, const ClassifyOptions& opt) {
  if (set.is_empty()) return 1.0;
  double m = kInf;
  for (int k = opt.ladder / 2; k < opt.ladder; ++k) {
    const double tau = std::ldexp(opt.tau0, k);
    Point x{};
    for (int i = 0; i < set.dim(); ++i) x[i] = tau * xi[i];
    m = std::min(m, set.distance(x) / tau);
  }
  return m;
}

double DirectionClassification::ratio_at(const Point& e) const { return liminf_ratio(set, e, options); }

bool DirectionClassification::is_unbounded(const Point& e) const { return ratio_at(e) < options.ratio_threshold; }

std::size_t DirectionClassification::n_unbounded() const {
  return static_cast<std::size_t>(std::count(unbounded.begin(), unbounded.end(), true));
}

DirectionClassification classify_directions(const IndicatorSet& set, const ClassifyOptions& opt) {
  if (opt.ladder < 2) throw ValidationError("ladder", "tau ladder needs at least two rungs");
  if (!(opt.tau0 > 0.0)) throw ValidationError("tau0", "tau0 must be positive");
  DirectionClassification cls;
  cls.dim = set.dim();
  cls.set = set;
  cls.options = opt;
  cls.directions = sample_directions(set.dim(), opt.m);
  cls.ratio.resize(cls.directions.size());
  cls.unbounded.resize(cls.directions.size());
  for (std::size_t k = 0; k < cls.directions.size(); ++k) {
    cls.ratio[k] = liminf_ratio(set, cls.directions[k], opt);
    cls.unbounded[k] = cls.ratio[k] < opt.ratio_threshold;
  }
  return cls;
}

double speed_function(const DirectionClassification& cls, double c_uv, const Point& e_raw) {
  if (!(c_uv > 0.0)) throw DomainError("speed function needs c_uv > 0");
  const Point e = unit(e_raw, cls.dim, "e");
  if (cls.is_unbounded(e)) return kInf;
  double w = c_uv;
  for (std::size_t k = 0; k < cls.directions.size(); ++k) {
    if (!cls.unbounded[k]) continue;
    const double c = dot(cls.directions[k], e, cls.dim);
    if (c < 0.0) continue;
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    w = std::max(w, s > 0.0 ? c_uv / s : kInf);
  }
  return w;
}

double ray_distance_rate(const DirectionClassification& cls, const Point& e_raw) {
  const Point e = unit(e_raw, cls.dim, "e");
  double m = 1.0;
  for (std::size_t k = 0; k < cls.directions.size(); ++k) {
    if (!cls.unbounded[k]) continue;
    const double c = dot(cls.directions[k], e, cls.dim);
    if (c < 0.0) continue;
    m = std::min(m, std::sqrt(std::max(0.0, 1.0 - c * c)));
  }
  return m;
}

EnvelopeMembership envelope_membership(const DirectionClassification& cls, double c_uv, const Point& x) {
  if (!(c_uv > 0.0)) throw DomainError("envelope needs c_uv > 0");
  EnvelopeMembership out;
  const double len = norm(x, cls.dim);
  if (len == 0.0) {
    out.route_a = out.route_b = true;
    return out;
  }
  Point e{};
  for (int i = 0; i < cls.dim; ++i) e[i] = x[i] / len;
  out.route_a = len < speed_function(cls, c_uv, e);

  double dist = len;  // the origin belongs to every ray
  for (std::size_t k = 0; k < cls.directions.size(); ++k) {
    if (!cls.unbounded[k]) continue;
    const double proj = dot(cls.directions[k], x, cls.dim);
    if (proj <= 0.0) continue;
    dist = std::min(dist, std::sqrt(std::max(0.0, len * len - proj * proj)));
  }
  out.route_b = dist < c_uv;
  return out;
}

double abcon_coverage(const IndicatorSet& set, double rho, const ClassifyOptions& opt) {
  const DirectionClassification outer = classify_directions(set, opt);
  const DirectionClassification inner = classify_directions(set.eroded(rho), opt);
  std::size_t covered = 0;
  for (std::size_t k = 0; k < outer.directions.size(); ++k)
    if (!outer.unbounded[k] || inner.unbounded[k]) ++covered;
  return static_cast<double>(covered) / static_cast<double>(outer.directions.size());
}

void write_classification_csv(std::ostream& os, const DirectionClassification& cls, double c_uv) {
  os << "# ratio_threshold = " << cls.options.ratio_threshold << "\n# c_uv = " << c_uv << "\n";
  if (cls.dim == 2)
    os << "angle,label,ratio,w\n";
  else
    os << "x,y,z,label,ratio,w\n";
  for (std::size_t k = 0; k < cls.directions.size(); ++k) {
    const Point& e = cls.directions[k];
    if (cls.dim == 2)
      os << std::atan2(e[1], e[0]);
    else
      os << e[0] << ',' << e[1] << ',' << e[2];
    const double w = c_uv > 0.0 ? speed_function(cls, c_uv, e) : kInf;
    os << ',' << (cls.unbounded[k] ? "unbounded" : "bounded") << ',' << cls.ratio[k] << ',';
    if (std::isinf(w)) os << "inf"; else os << w;
    os << '\n';
  }
}

}  // namespace lvs
