#include "lvspread/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "lvspread/error.hpp"

namespace lvs {

namespace fs = std::filesystem;

// ------------------------------------------------------------------ grid

Grid Grid::line(double L, double h) {
  if (!(L > 0.0) || !(h > 0.0) || h >= L) throw ValidationError("h", "grid needs 0 < h < L");
  Grid g;
  g.kind = GridKind::line;
  g.h = h;
  // Even cell count so that x = 0 is a node.
  auto cells = static_cast<std::size_t>(std::llround(2.0 * L / h));
  cells += cells % 2;
  g.n = cells + 1;
  g.L = 0.5 * h * static_cast<double>(g.n - 1);
  g.N = 1;
  return g;
}

Grid Grid::radial(int N, double L, double h) {
  if (!(L > 0.0) || !(h > 0.0) || h >= L) throw ValidationError("h", "grid needs 0 < h < L");
  if (N < 1) throw ValidationError("N", "radial dimension must be >= 1");
  Grid g;
  g.kind = GridKind::radial;
  g.h = h;
  g.n = static_cast<std::size_t>(std::llround(L / h)) + 1;
  g.L = h * static_cast<double>(g.n - 1);
  g.N = N;
  return g;
}

Grid Grid::plane(double L, double h) {
  Grid g = line(L, h);
  g.kind = GridKind::plane;
  g.N = 2;
  return g;
}

Point Grid::point(std::size_t k) const {
  if (kind == GridKind::plane) return {coord(k % n), coord(k / n), 0.0};
  return {coord(k), 0.0, 0.0};
}

double Grid::radius(std::size_t k) const {
  const Point p = point(k);
  return std::hypot(p[0], p[1]);
}

double Grid::boundary_distance(std::size_t k) const {
  switch (kind) {
    case GridKind::line:
      return L - std::abs(coord(k));
    case GridKind::radial:
      return L - coord(k);
    case GridKind::plane: {
      const Point p = point(k);
      return L - std::max(std::abs(p[0]), std::abs(p[1]));
    }
  }
  return 0.0;
}

int Grid::stencil_dim() const {
  switch (kind) {
    case GridKind::line: return 1;
    case GridKind::radial: return N;
    case GridKind::plane: return 2;
  }
  return 1;
}

// ------------------------------------------------------------ init

namespace {

void check_radial_set(const IndicatorSet& s, const char* name) {
  for (const auto& pr : s.primitives()) {
    const bool centred = pr.p[0] == 0.0 && pr.p[1] == 0.0 && pr.p[2] == 0.0;
    if (!((pr.kind == Primitive::Kind::ball || pr.kind == Primitive::Kind::shell) && centred))
      throw ConfigError(std::string("radial grid: set ") + name + " must be a union of balls/shells centred at 0");
  }
}

}  // namespace

GridState init_state(const Grid& grid, const ScenarioSpec& sc) {
  if (grid.kind == GridKind::radial) {
    check_radial_set(sc.U, "U");
    if (sc.kind == ScenarioSpec::Kind::C1) check_radial_set(sc.V, "V");
  }
  GridState s;
  const std::size_t n = grid.size();
  s.u.assign(n, 0.0);
  s.v.assign(n, 0.0);
  if (sc.kind == ScenarioSpec::Kind::C1) {
    if (!sc.U.is_bounded() || !sc.V.is_bounded()) throw ConfigError("C1 data needs bounded U and V");
  }
  const double margin = 10.0 * grid.h;
  for (std::size_t k = 0; k < n; ++k) {
    const Point x = grid.point(k);
    const bool in_u = sc.U.contains(x);
    s.u[k] = in_u ? 1.0 : 0.0;
    if (sc.kind == ScenarioSpec::Kind::C2) {
      s.v[k] = 1.0 - s.u[k];
      continue;
    }
    const bool in_v = sc.V.contains(x);
    s.v[k] = in_v ? 1.0 : 0.0;
    if (in_u && in_v) throw ConfigError("C1 data: U and V overlap");
    if ((in_u || in_v) && grid.boundary_distance(k) < margin)
      throw ConfigError("C1 data: initial support comes within 10h of the grid boundary");
  }
  return s;
}

// ------------------------------------------------------------ stepping

double diffusion_dt_bound(const Grid& grid, const ModelParams& p) {
  const double dim = static_cast<double>(grid.stencil_dim());
  return 0.9 * grid.h * grid.h / (2.0 * dim * std::max(p.d, 1.0));
}

double default_dt(const Grid& grid, const ModelParams& p) {
  // Euler on the reaction stays order preserving while dt * |f'| <= 0.1.
  const double react = std::max(p.r * (1.0 + p.a), 1.0 + p.b);
  return std::min(diffusion_dt_bound(grid, p), 0.1 / react);
}

namespace {

struct Stencil {
  const Grid* grid = nullptr;
  std::vector<double> wp, wm;  // radial flux weights
};

Stencil make_stencil(const Grid& grid) {
  Stencil st;
  st.grid = &grid;
  if (grid.kind == GridKind::radial) {
    st.wp.assign(grid.n, 0.0);
    st.wm.assign(grid.n, 0.0);
    const double e = static_cast<double>(grid.N - 1);
    for (std::size_t i = 1; i < grid.n; ++i) {
      const double ri = static_cast<double>(i);
      st.wp[i] = std::pow((ri + 0.5) / ri, e);
      st.wm[i] = std::pow((ri - 0.5) / ri, e);
    }
  }
  return st;
}

inline double lap_line(const double* f, std::size_t i, std::size_t n) {
  // Neumann by reflection.
  const double l = i == 0 ? f[1] : f[i - 1];
  const double r = i + 1 == n ? f[n - 2] : f[i + 1];
  return l - 2.0 * f[i] + r;
}

inline double lap_radial(const Stencil& st, const double* f, std::size_t i, std::size_t n) {
  if (i == 0) return 2.0 * st.grid->N * (f[1] - f[0]);
  const double r = i + 1 == n ? f[n - 2] : f[i + 1];
  return st.wp[i] * (r - f[i]) - st.wm[i] * (f[i] - f[i - 1]);
}

inline double lap_plane(const double* f, std::size_t k, std::size_t n) {
  const std::size_t i = k % n, j = k / n;
  const double w = i == 0 ? f[k + 1] : f[k - 1];
  const double e = i + 1 == n ? f[k - 1] : f[k + 1];
  const double s = j == 0 ? f[k + n] : f[k - n];
  const double no = j + 1 == n ? f[k - n] : f[k + n];
  return w + e + s + no - 4.0 * f[k];
}

void step_range(const Stencil& st, const GridState& in, GridState& out, const ModelParams& p, double dt,
                std::size_t lo, std::size_t hi) {
  const Grid& g = *st.grid;
  const double ih2 = 1.0 / (g.h * g.h);
  const double* u = in.u.data();
  const double* v = in.v.data();
  for (std::size_t k = lo; k < hi; ++k) {
    double lu, lv;
    switch (g.kind) {
      case GridKind::line:
        lu = lap_line(u, k, g.n);
        lv = lap_line(v, k, g.n);
        break;
      case GridKind::radial:
        lu = lap_radial(st, u, k, g.n);
        lv = lap_radial(st, v, k, g.n);
        break;
      default:
        lu = lap_plane(u, k, g.n);
        lv = lap_plane(v, k, g.n);
        break;
    }
    const double uk = u[k], vk = v[k];
    out.u[k] = uk + dt * (p.d * lu * ih2 + p.r * uk * (1.0 - uk - p.a * vk));
    out.v[k] = vk + dt * (lv * ih2 + vk * (1.0 - vk - p.b * uk));
  }
}

void check_box(const GridState& s) {
  constexpr double tol = 1e-12;
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    if (s.u[k] < -tol || s.u[k] > 1.0 + tol || s.v[k] < -tol || s.v[k] > 1.0 + tol || !std::isfinite(s.u[k] + s.v[k])) {
      std::ostringstream os;
      os << "box invariant violated at node " << k << " (u=" << s.u[k] << ", v=" << s.v[k] << ", t=" << s.t << ")";
      throw NumericError(os.str());
    }
  }
}

void step_into(const Stencil& st, const GridState& in, GridState& out, const ModelParams& p, double dt, int threads) {
  const std::size_t n = in.u.size();
  out.u.resize(n);
  out.v.resize(n);
  out.t = in.t + dt;
  // Thread start-up only pays off on larger grids.
  const int nt = n < 16384 ? 1 : std::max(1, threads);
  if (nt == 1) {
    step_range(st, in, out, p, dt, 0, n);
  } else {
    std::size_t row = st.grid->kind == GridKind::plane ? st.grid->n : 1;
    const std::size_t rows = n / row;
    std::vector<std::thread> pool;
    for (int b = 0; b < nt; ++b) {
      const std::size_t lo = rows * b / nt * row, hi = rows * (b + 1) / nt * row;
      pool.emplace_back(step_range, std::cref(st), std::cref(in), std::ref(out), std::cref(p), dt, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  check_box(out);
}

void check_dt(const Grid& grid, const ModelParams& p, double dt) {
  const double bound = diffusion_dt_bound(grid, p);
  if (!(dt > 0.0) || dt > bound * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "dt=" << dt << " violates the stability bound " << bound;
    throw ValidationError("dt", os.str());
  }
}

}  // namespace

GridState step(const Grid& grid, const GridState& state, const ModelParams& params, double dt, int threads) {
  validate(params);
  check_dt(grid, params, dt);
  if (state.u.size() != grid.size() || state.v.size() != grid.size())
    throw ValidationError("state", "state size does not match the grid");
  const Stencil st = make_stencil(grid);
  GridState out;
  step_into(st, state, out, params, dt, threads);
  return out;
}

// ------------------------------------------------------------------ run

Trajectory run(const Grid& grid, const ScenarioSpec& scenario, const ModelParams& params, double T_final,
               double snapshot_every, const RunOptions& options) {
  return run_from(grid, init_state(grid, scenario), params, T_final, snapshot_every, options);
}

Trajectory run_from(const Grid& grid, GridState initial, const ModelParams& params, double T_final,
                    double snapshot_every, const RunOptions& opt) {
  validate(params);
  if (!(T_final > 0.0)) throw ValidationError("T_final", "T_final must be positive");
  if (!(snapshot_every > 0.0) || snapshot_every > T_final)
    throw ValidationError("snapshot_every", "snapshot_every must lie in (0, T_final]");
  if (initial.u.size() != grid.size() || initial.v.size() != grid.size())
    throw ValidationError("state", "initial state size does not match the grid");
  const auto t0 = std::chrono::steady_clock::now();

  const double dt_max = opt.dt > 0.0 ? opt.dt : default_dt(grid, params);
  check_dt(grid, params, dt_max);
  const auto per_snap = static_cast<long>(std::ceil(snapshot_every / dt_max - 1e-9));
  const double dt = snapshot_every / static_cast<double>(per_snap);
  const auto n_snaps = static_cast<long>(std::llround(T_final / snapshot_every));

  Trajectory traj;
  traj.grid = grid;
  traj.params = params;
  traj.dt = dt;
  check_box(initial);
  initial.t = 0.0;

  // Boundary shell monitor, only for fields that start below 1/2 there.
  std::vector<std::size_t> shell;
  for (std::size_t k = 0; k < grid.size(); ++k)
    if (grid.boundary_distance(k) <= 10.0 * grid.h) shell.push_back(k);
  auto shell_max = [&](const std::vector<double>& f) {
    double m = 0.0;
    for (auto k : shell) m = std::max(m, f[k]);
    return m;
  };
  const bool watch_u = opt.monitor && shell_max(initial.u) < 0.5;
  const bool watch_v = opt.monitor && shell_max(initial.v) < 0.5;
  bool warned_u = false, warned_v = false;
  const double u_mass0 = *std::max_element(initial.u.begin(), initial.u.end());

  const Stencil st = make_stencil(grid);
  traj.snapshots.reserve(static_cast<std::size_t>(n_snaps) + 1);
  traj.snapshots.push_back(initial);
  GridState a = std::move(initial), b;
  for (long s = 1; s <= n_snaps; ++s) {
    for (long k = 0; k < per_snap; ++k) {
      step_into(st, a, b, params, dt, opt.threads);
      std::swap(a, b);
    }
    a.t = static_cast<double>(s) * snapshot_every;
    for (int f = 0; f < 2; ++f) {
      if (!(f == 0 ? watch_u : watch_v)) continue;
      const double m = shell_max(f == 0 ? a.u : a.v);
      const char* name = f == 0 ? "u" : "v";
      bool& warned = f == 0 ? warned_u : warned_v;
      if (m >= 0.5) {
        std::ostringstream os;
        os << "front contamination: " << name << " reached the 1/2 level within 10h of the boundary at t=" << a.t;
        throw NumericError(os.str());
      }
      if (m > opt.warn_level && !warned) {
        std::ostringstream os;
        os << "front nearing boundary: max " << name << " in the boundary shell is " << m << " at t=" << a.t;
        traj.warnings.push_back(os.str());
        warned = true;
      }
    }
    traj.snapshots.push_back(a);
  }
  const double u_end = *std::max_element(a.u.begin(), a.u.end());
  if (u_mass0 > 0.0 && u_end < 1e-3) {
    std::ostringstream os;
    os << "u went extinct (max u = " << u_end << " at t=" << a.t << "); the initial support of u may be too small";
    traj.warnings.push_back(os.str());
  }
  traj.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return traj;
}

// ------------------------------------------------------------------- I/O

namespace {

const char* kind_name(GridKind k) {
  switch (k) {
    case GridKind::line: return "line";
    case GridKind::radial: return "radial";
    case GridKind::plane: return "plane";
  }
  return "?";
}

std::string snap_name(std::size_t i) {
  std::ostringstream os;
  os << "snap_" << std::setw(5) << std::setfill('0') << i << ".csv";
  return os.str();
}

}  // namespace

void write_trajectory(const std::string& dir, const Trajectory& traj, const std::string& extra) {
  fs::create_directories(dir);
  {
    std::ofstream m(fs::path(dir) / "manifest.txt");
    m << std::setprecision(17);
    m << "[grid]\nkind = " << kind_name(traj.grid.kind) << "\nh = " << traj.grid.h << "\nL = " << traj.grid.L
      << "\nN = " << traj.grid.N << "\nn = " << traj.grid.n << "\n";
    m << "[params]\nd = " << traj.params.d << "\nr = " << traj.params.r << "\na = " << traj.params.a
      << "\nb = " << traj.params.b << "\n";
    m << "[run]\ndt = " << traj.dt << "\nsnapshots = " << traj.snapshots.size()
      << "\nwall_seconds = " << traj.wall_seconds << "\n";
    for (std::size_t i = 0; i < traj.warnings.size(); ++i) m << "warning_" << i << " = " << traj.warnings[i] << "\n";
    m << extra;
  }
  for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
    const GridState& st = traj.snapshots[s];
    std::ofstream f(fs::path(dir) / snap_name(s));
    f << std::setprecision(17) << "# t = " << st.t << "\n";
    if (traj.grid.kind == GridKind::plane) {
      // Dense matrices, u block then v block, rows are y.
      const std::size_t n = traj.grid.n;
      for (int field = 0; field < 2; ++field) {
        const auto& a = field == 0 ? st.u : st.v;
        f << "# field = " << (field == 0 ? "u" : "v") << "\n";
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t i = 0; i < n; ++i) f << (i ? "," : "") << a[j * n + i];
          f << "\n";
        }
      }
    } else {
      f << (traj.grid.kind == GridKind::radial ? "r,u,v\n" : "x,u,v\n");
      for (std::size_t k = 0; k < st.u.size(); ++k) f << traj.grid.coord(k) << ',' << st.u[k] << ',' << st.v[k] << "\n";
    }
  }
}

Trajectory read_trajectory(const std::string& dir) {
  const fs::path mpath = fs::path(dir) / "manifest.txt";
  std::ifstream m(mpath);
  if (!m) throw ConfigError("missing trajectory: no manifest at " + mpath.string());
  std::map<std::string, std::string> kv;
  std::string line, section;
  while (std::getline(m, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line[0] == '[') {
      section = line.substr(1, line.find(']') - 1);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    kv[section + "." + trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  auto num = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("trajectory manifest: missing key " + key);
    return std::stod(it->second);
  };
  Trajectory traj;
  const std::string kind = kv["grid.kind"];
  const double h = num("grid.h"), L = num("grid.L");
  if (kind == "line") traj.grid = Grid::line(L, h);
  else if (kind == "radial") traj.grid = Grid::radial(static_cast<int>(num("grid.N")), L, h);
  else if (kind == "plane") traj.grid = Grid::plane(L, h);
  else throw ConfigError("trajectory manifest: unknown grid kind '" + kind + "'");
  traj.params = {num("params.d"), num("params.r"), num("params.a"), num("params.b")};
  traj.dt = num("run.dt");
  const auto n_snap = static_cast<std::size_t>(num("run.snapshots"));
  const std::size_t n = traj.grid.size();
  for (std::size_t s = 0; s < n_snap; ++s) {
    std::ifstream f(fs::path(dir) / snap_name(s));
    if (!f) throw ConfigError("missing trajectory: snapshot " + snap_name(s) + " not found");
    GridState st;
    st.u.reserve(n);
    st.v.reserve(n);
    int field = 0;
    while (std::getline(f, line)) {
      if (line.empty()) continue;
      if (line[0] == '#') {
        if (line.rfind("# t =", 0) == 0) st.t = std::stod(line.substr(5));
        if (line.rfind("# field = v", 0) == 0) field = 1;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(line[0])) && line[0] != '-' && line[0] != '.') continue;
      std::istringstream ls(line);
      std::string cell;
      if (traj.grid.kind == GridKind::plane) {
        auto& a = field == 0 ? st.u : st.v;
        while (std::getline(ls, cell, ',')) a.push_back(std::stod(cell));
      } else {
        std::getline(ls, cell, ',');
        std::getline(ls, cell, ',');
        st.u.push_back(std::stod(cell));
        std::getline(ls, cell, ',');
        st.v.push_back(std::stod(cell));
      }
    }
    if (st.u.size() != n || st.v.size() != n) throw ConfigError("trajectory: snapshot " + snap_name(s) + " has the wrong size");
    traj.snapshots.push_back(std::move(st));
  }
  return traj;
}

// ---------------------------------------------------------- radius search

RadiusSearchResult invasion_radius_search(const ModelParams& params, const Grid& grid, double rho_max, int n_bisect,
                                          double T_probe, double success_level, int threads) {
  if (grid.kind != GridKind::radial) throw ConfigError("invasion radius search needs a radial grid");
  if (!(rho_max > grid.h) || rho_max > grid.L - 10.0 * grid.h)
    throw ValidationError("rho_max", "rho_max must exceed h and stay 10h inside the grid");
  if (n_bisect < 1) throw ValidationError("n_bisect", "n_bisect must be >= 1");
  RadiusSearchResult res;
  auto probe = [&](double rho) {
    ScenarioSpec sc;
    sc.kind = ScenarioSpec::Kind::C2;
    sc.U = IndicatorSet(1);
    sc.U.add_ball({0.0, 0.0, 0.0}, rho);
    RunOptions o;
    o.threads = threads;
    o.monitor = false;
    const Trajectory tr = run(grid, sc, params, T_probe, T_probe, o);
    ++res.runs;
    return tr.snapshots.back().u[0];
  };
  double u_hi = probe(rho_max);
  if (u_hi < success_level) {
    std::ostringstream os;
    os << "no invasion up to rho_max=" << rho_max << " (u(T_probe,0)=" << u_hi << ")";
    throw DomainError(os.str());
  }
  double lo = 0.0, hi = rho_max, u_lo = 0.0;
  for (int k = 0; k < n_bisect && hi - lo > grid.h; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double um = probe(mid);
    if (um >= success_level) {
      hi = mid;
      u_hi = um;
    } else {
      lo = mid;
      u_lo = um;
    }
  }
  res.rho_star = hi;
  res.rho_fail = lo;
  res.u_center_success = u_hi;
  res.u_center_fail = u_lo;
  return res;
}

}  // namespace lvs
