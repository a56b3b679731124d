#include "dispatch.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;

namespace lvcli {

namespace {

// Failure carrying the exit code and a short kind tag for error.json.
struct Failure {
  int code;
  std::string kind;
  std::string message;
  std::string key;
};

int exit_for(lvs_status s) {
  switch (s) {
    case LVS_ERR_VALIDATION:
    case LVS_ERR_CONFIG:
    case LVS_ERR_NULL_ARG:
    case LVS_ERR_IO: return kExitConfig;
    default: return kExitNumeric;
  }
}

void check(lvs_status s, const std::string& what) {
  if (s == LVS_OK) return;
  throw Failure{exit_for(s), lvs_status_name(s), what + ": " + lvs_last_error(), lvs_last_error_field()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Profile = std::unique_ptr<lvs_profile, Deleter<lvs_profile, lvs_profile_free>>;
using Set = std::unique_ptr<lvs_set, Deleter<lvs_set, lvs_set_free>>;
using Classification = std::unique_ptr<lvs_classification, Deleter<lvs_classification, lvs_classification_free>>;
using Traj = std::unique_ptr<lvs_trajectory, Deleter<lvs_trajectory, lvs_trajectory_free>>;
using Track = std::unique_ptr<lvs_track, Deleter<lvs_track, lvs_track_free>>;
using Cert = std::unique_ptr<lvs_certificate, Deleter<lvs_certificate, lvs_certificate_free>>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<double> number_list(const std::string& s, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure{kExitConfig, "config", "key '" + key + "': '" + item + "' is not a number", key};
    }
  }
  return out;
}

// Collects "key = value" lines for the manifest's [results] section.
class Results {
 public:
  template <class T>
  void add(const std::string& k, const T& v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    lines_.push_back(k + " = " + os.str());
  }
  std::string str() const {
    std::string s;
    for (const auto& l : lines_) s += l + "\n";
    return s;
  }

 private:
  std::vector<std::string> lines_;
};

struct Context {
  const RunConfig& cfg;
  fs::path out;
  std::ostream& log;
  Results results;
  std::vector<std::string> inputs;
  int exit_code = kExitOk;
};

lvs_params model(const RunConfig& c) {
  return lvs_params{c.real("model.d"), c.real("model.r"), c.real("model.a"), c.real("model.b")};
}

lvs_grid_spec grid(const RunConfig& c) {
  lvs_grid_spec g{};
  const std::string k = c.text("grid.kind");
  g.kind = k == "line" ? LVS_GRID_LINE : k == "radial" ? LVS_GRID_RADIAL : LVS_GRID_PLANE;
  g.N = static_cast<int>(c.integer("grid.N"));
  g.L = c.real("grid.L");
  g.h = c.real("grid.h");
  return g;
}

int set_dim(const lvs_grid_spec& g) { return g.kind == LVS_GRID_PLANE ? 2 : 1; }

lvs_front_options front_options(const RunConfig& c) {
  lvs_front_options o;
  lvs_front_options_default(&o);
  o.half_length = c.real("front.half_length");
  o.n_points = static_cast<size_t>(c.integer("front.n_points"));
  o.tol = c.real("front.tol");
  o.max_newton = static_cast<int>(c.integer("front.max_newton"));
  o.max_doublings = static_cast<int>(c.integer("front.max_doublings"));
  o.tail_tol = c.real("front.tail_tol");
  return o;
}

// Profile from front.profile, or a fresh solve written to out/profile.csv.
Profile obtain_profile(Context& ctx) {
  lvs_profile* raw = nullptr;
  const std::string path = ctx.cfg.text("front.profile");
  if (!path.empty()) {
    check(lvs_profile_read(path.c_str(), &raw), "reading profile");
    ctx.inputs.push_back(path);
  } else {
    const lvs_params p = model(ctx.cfg);
    const lvs_front_options o = front_options(ctx.cfg);
    check(lvs_front_solve(&p, &o, &raw), "front");
    Profile prof(raw);
    check(lvs_profile_write(prof.get(), (ctx.out / "profile.csv").c_str()), "writing profile");
    ctx.log << "front solved: c_uv = " << std::setprecision(10) << [&] {
      lvs_profile_info i;
      lvs_profile_get_info(prof.get(), &i);
      return i.speed;
    }() << "\n";
    return prof;
  }
  return Profile(raw);
}

double profile_speed(const lvs_profile* p) {
  lvs_profile_info i;
  check(lvs_profile_get_info(p, &i), "profile info");
  return i.speed;
}

// c_uv from an explicit key, else from the profile (solving if needed).
double resolve_c_uv(Context& ctx, const std::string& key) {
  const double given = ctx.cfg.real(key);
  if (std::isfinite(given)) return given;
  Profile prof = obtain_profile(ctx);
  return profile_speed(prof.get());
}

Traj simulate_from_config(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const lvs_params p = model(c);
  const lvs_grid_spec g = grid(c);
  const int dim = set_dim(g);
  Set U(build_set(c.text("scenario.U"), dim));
  const bool c1 = c.text("scenario.kind") == "C1";
  Set V;
  if (c1) {
    if (trim(c.text("scenario.V")).empty())
      throw Failure{kExitConfig, "config", "C1 scenario needs scenario.V", "scenario.V"};
    V.reset(build_set(c.text("scenario.V"), dim));
  }
  lvs_run_options ro;
  lvs_run_options_default(&ro);
  ro.dt = c.real("sim.dt");
  ro.threads = static_cast<int>(c.integer("run.threads"));
  ro.monitor = c.boolean("sim.monitor");
  ro.warn_level = c.real("sim.warn_level");
  lvs_trajectory* raw = nullptr;
  check(lvs_simulate(&p, &g, c1 ? LVS_SCENARIO_C1 : LVS_SCENARIO_C2, U.get(), V.get(), c.real("sim.T_final"),
                     c.real("sim.snapshot_every"), &ro, &raw),
        "simulate");
  Traj t(raw);
  const std::string extra = "[scenario]\nkind = " + c.text("scenario.kind") + "\nU = " + c.text("scenario.U") +
                            "\nV = " + c.text("scenario.V") + "\n";
  check(lvs_trajectory_write(t.get(), (ctx.out / "trajectory").c_str(), extra.c_str()), "writing trajectory");
  lvs_trajectory_info info;
  check(lvs_trajectory_get_info(t.get(), &info), "trajectory info");
  ctx.results.add("trajectory", (ctx.out / "trajectory").string());
  ctx.results.add("dt", info.dt);
  ctx.results.add("snapshots", info.n_snapshots);
  ctx.results.add("nodes", info.n_nodes);
  ctx.results.add("warnings", info.n_warnings);
  for (size_t i = 0; i < info.n_warnings; ++i) ctx.log << "warning: " << lvs_trajectory_warning(t.get(), i) << "\n";
  return t;
}

Traj load_trajectory(Context& ctx, const std::string& key) {
  std::string dir = ctx.cfg.text(key);
  if (dir.empty()) throw Failure{kExitConfig, "config", "missing trajectory: set " + key + " to a simulate output", key};
  lvs_trajectory* raw = nullptr;
  const lvs_status s = lvs_trajectory_read(dir.c_str(), &raw);
  if (s != LVS_OK) throw Failure{kExitConfig, "config", std::string("missing trajectory: ") + lvs_last_error(), key};
  ctx.inputs.push_back(dir);
  return Traj(raw);
}

// ------------------------------------------------------------- commands

void cmd_front(Context& ctx) {
  const lvs_params p = model(ctx.cfg);
  double c_u = 0, c_v = 0, d0 = 0;
  check(lvs_validate(&p, 1, &c_u, &c_v), "model");
  check(lvs_delta0(&p, &d0), "delta0");
  Profile prof = obtain_profile(ctx);
  lvs_profile_info info;
  check(lvs_profile_get_info(prof.get(), &info), "profile info");
  ctx.results.add("c_u", c_u);
  ctx.results.add("c_v", c_v);
  ctx.results.add("c_uv", info.speed);
  ctx.results.add("residual_norm", info.residual_norm);
  ctx.results.add("newton_iterations", info.newton_iterations);
  ctx.results.add("half_length", info.half_length);
  ctx.results.add("n_points", info.n_points);
  ctx.results.add("delta0", d0);
  ctx.results.add("profile", (ctx.out / "profile.csv").string());
}

void cmd_simulate(Context& ctx) { simulate_from_config(ctx); }

void run_zones(Context& ctx, const lvs_trajectory* t);

void cmd_speed(Context& ctx) {
  Traj t = ctx.cfg.text("speed.trajectory").empty() ? simulate_from_config(ctx) : load_trajectory(ctx, "speed.trajectory");
  const std::vector<double> dir = number_list(ctx.cfg.text("speed.direction"), "speed.direction");
  if (dir.size() != 3) throw Failure{kExitConfig, "config", "speed.direction needs three components", "speed.direction"};
  const double e[3] = {dir[0], dir[1], dir[2]};
  const lvs_field f = ctx.cfg.text("speed.field") == "u" ? LVS_FIELD_U : LVS_FIELD_V;
  lvs_track* raw = nullptr;
  check(lvs_track_level(t.get(), f, ctx.cfg.real("speed.level"), e, &raw), "track");
  Track tr(raw);
  check(lvs_track_write_csv(tr.get(), (ctx.out / "track.csv").c_str()), "writing track");
  lvs_speed_estimate est;
  check(lvs_fit_speed(tr.get(), &est), "fit speed");
  lvs_trajectory_info info;
  check(lvs_trajectory_get_info(t.get(), &info), "trajectory info");
  double c_u = 0, c_v = 0;
  check(lvs_validate(&info.params, 0, &c_u, &c_v), "model");
  ctx.results.add("field", ctx.cfg.text("speed.field"));
  ctx.results.add("speed", est.speed);
  ctx.results.add("intercept", est.intercept);
  ctx.results.add("fit_window", std::to_string(est.t1) + ".." + std::to_string(est.t2));
  ctx.results.add("rms_residual", est.rms_residual);
  ctx.results.add("samples", est.n_samples);
  ctx.results.add("c_u", c_u);
  ctx.results.add("c_v", c_v);
  ctx.log << "fitted speed " << est.speed << "\n";
  if (ctx.cfg.boolean("speed.zones")) run_zones(ctx, t.get());
}

void run_zones(Context& ctx, const lvs_trajectory* t) {
  lvs_trajectory_info info;
  check(lvs_trajectory_get_info(t, &info), "trajectory info");
  double c_u = 0, c_v = 0;
  check(lvs_validate(&info.params, 0, &c_u, &c_v), "model");
  std::vector<double> cl = number_list(ctx.cfg.text("zones.c_list"), "zones.c_list");
  double c_uv = ctx.cfg.real("zones.c_uv");
  if (c_u <= c_v && !std::isfinite(c_uv)) {
    // The fast-v zones need c_uv; the front is solved for the trajectory's own parameters.
    lvs_profile* raw = nullptr;
    if (!ctx.cfg.text("front.profile").empty()) {
      check(lvs_profile_read(ctx.cfg.text("front.profile").c_str(), &raw), "reading profile");
    } else {
      const lvs_front_options o = front_options(ctx.cfg);
      check(lvs_front_solve(&info.params, &o, &raw), "front");
    }
    Profile prof(raw);
    c_uv = profile_speed(prof.get());
  }
  if (cl.empty()) {
    if (c_u > c_v)
      cl = {0.5 * c_u, 1.2 * c_u};
    else
      cl = {0.5 * c_uv, 2.0 * c_uv, 0.8 * c_v, 1.2 * c_v};
  }
  int pass = 0;
  check(lvs_check_zones(t, c_uv, cl.data(), cl.size(), ctx.cfg.real("zones.tolerance"),
                        (ctx.out / "zones.txt").c_str(), &pass),
        "zones");
  std::ostringstream list;
  for (std::size_t i = 0; i < cl.size(); ++i) list << (i ? "," : "") << std::setprecision(10) << cl[i];
  ctx.results.add("c_list", list.str());
  if (std::isfinite(c_uv)) ctx.results.add("c_uv", c_uv);
  ctx.results.add("pass", pass ? "true" : "false");
  ctx.results.add("report", (ctx.out / "zones.txt").string());
  ctx.log << "zones " << (pass ? "pass" : "fail") << "\n";
}

void cmd_zones(Context& ctx) {
  Traj t = load_trajectory(ctx, "zones.trajectory");
  run_zones(ctx, t.get());
}

void cmd_geometry(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const int dim = static_cast<int>(c.integer("geometry.dim"));
  Set s(build_set(c.text("geometry.set"), dim));
  lvs_classify_options o;
  lvs_classify_options_default(&o);
  o.m = static_cast<size_t>(c.integer("geometry.m"));
  o.tau0 = c.real("geometry.tau0");
  o.ladder = static_cast<int>(c.integer("geometry.ladder"));
  o.ratio_threshold = c.real("geometry.ratio_threshold");
  const double c_uv = resolve_c_uv(ctx, "geometry.c_uv");
  lvs_classification* raw = nullptr;
  check(lvs_classify(s.get(), &o, &raw), "classify");
  Classification cls(raw);
  check(lvs_classification_write_csv(cls.get(), c_uv, (ctx.out / "directions.csv").c_str()), "writing directions");
  size_t n = 0, nu = 0;
  check(lvs_classification_counts(cls.get(), &n, &nu), "counts");
  ctx.results.add("c_uv", c_uv);
  ctx.results.add("directions", n);
  ctx.results.add("unbounded", nu);
  const double rho = c.real("geometry.rho");
  if (rho > 0.0) {
    double cov = 0.0;
    check(lvs_abcon_coverage(s.get(), rho, &o, &cov), "coverage");
    ctx.results.add("coverage", cov);
  }
}

void cmd_certify(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  Profile prof = obtain_profile(ctx);
  ctx.results.add("c_uv", profile_speed(prof.get()));
  std::vector<lvs_cert_kind> kinds;
  const std::string k = c.text("certify.kind");
  if (k != "super") kinds.push_back(LVS_CERT_SUB);
  if (k != "sub") kinds.push_back(LVS_CERT_SUPER);
  lvs_scan_options so;
  lvs_scan_options_default(&so);
  so.t_max = c.real("certify.t_max");
  so.n_t = static_cast<size_t>(c.integer("certify.n_t"));
  so.x_factor = c.real("certify.x_factor");
  so.n_coarse = static_cast<size_t>(c.integer("certify.n_coarse"));
  so.rel_slack = c.real("certify.rel_slack");
  bool any_fail = false, any_inconclusive = false;
  for (lvs_cert_kind kind : kinds) {
    const std::string tag = kind == LVS_CERT_SUB ? "sub" : "super";
    lvs_certificate* raw = nullptr;
    check(lvs_certificate_assemble(prof.get(), c.real("certify.eps"), kind, static_cast<int>(c.integer("certify.N")), &raw),
          "assemble " + tag);
    Cert cert(raw);
    lvs_certificate_info info;
    check(lvs_certificate_get_info(cert.get(), &info), "certificate info");
    size_t n_total = 0, n_failed = 0;
    check(lvs_certificate_check_constants(cert.get(), prof.get(), &n_total, &n_failed), "constants");
    lvs_scan_summary sum;
    const fs::path report = ctx.out / ("certificate_" + tag + ".txt");
    check(lvs_certificate_scan(cert.get(), prof.get(), &so, report.c_str(), &sum), "scan " + tag);
    ctx.results.add(tag + ".delta", info.delta);
    ctx.results.add(tag + ".M", info.M);
    ctx.results.add(tag + ".omega", info.omega);
    ctx.results.add(tag + ".R", info.R);
    ctx.results.add(tag + ".constants_failed", std::to_string(n_failed) + "/" + std::to_string(n_total));
    ctx.results.add(tag + ".verdict", sum.verdict == LVS_VERDICT_PASS ? "pass"
                                      : sum.verdict == LVS_VERDICT_FAIL ? "fail"
                                                                        : "inconclusive");
    ctx.results.add(tag + ".violations", sum.violations);
    ctx.results.add(tag + ".noisy", sum.noisy);
    ctx.results.add(tag + ".report", report.string());
    if (n_failed > 0 || sum.verdict == LVS_VERDICT_FAIL) any_fail = true;
    if (sum.verdict == LVS_VERDICT_INCONCLUSIVE) any_inconclusive = true;
    if (kind == LVS_CERT_SUPER) {
      lvs_delta_summary d;
      check(lvs_certificate_delta(cert.get(), prof.get(), &d), "delta conclusions");
      ctx.results.add("super.delta_fields_literal", d.literal ? "pass" : "fail");
      ctx.results.add("super.delta_fields_corrected", d.corrected ? "pass" : "fail");
      if (!d.corrected) any_fail = true;
    }
    if (c.boolean("certify.check_solution")) {
      lvs_solution_check sc;
      check(lvs_certificate_check_solution(cert.get(), prof.get(), c.real("certify.solution_h"),
                                           c.real("certify.solution_margin"), c.real("certify.solution_T"),
                                           c.real("certify.solution_every"), static_cast<int>(c.integer("run.threads")),
                                           &sc),
            "solution check " + tag);
      ctx.results.add(tag + ".ordering_violations", sc.ordering_violations);
      ctx.results.add(tag + ".ordering_snapshots", sc.snapshots);
      if (sc.ordering_violations > 0) any_fail = true;
      if (sc.delta_checked) {
        ctx.results.add("super.delta_solution_literal", sc.delta.literal ? "pass" : "fail");
        if (!sc.delta.literal) any_fail = true;
      }
    }
    ctx.log << tag << ": " << (sum.verdict == LVS_VERDICT_PASS ? "pass" : "not pass") << "\n";
  }
  if (any_fail)
    ctx.exit_code = kExitNumeric;
  else if (any_inconclusive)
    ctx.exit_code = kExitInconclusive;
}

void cmd_radius(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const lvs_params p = model(c);
  const lvs_grid_spec g = grid(c);
  lvs_radius_result r;
  check(lvs_radius_search(&p, &g, c.real("radius.rho_max"), static_cast<int>(c.integer("radius.n_bisect")),
                          c.real("radius.T_probe"), c.real("radius.success_level"),
                          static_cast<int>(c.integer("run.threads")), &r),
        "radius search");
  ctx.results.add("rho_star", r.rho_star);
  ctx.results.add("rho_fail", r.rho_fail);
  ctx.results.add("u_center_success", r.u_center_success);
  ctx.results.add("u_center_fail", r.u_center_fail);
  ctx.results.add("runs", r.runs);
}

void write_manifest(const Context& ctx, const std::string& status, double wall) {
  std::ofstream m(ctx.out / "manifest.txt");
  m << "# lvspread run manifest\n";
  m << "[manifest]\n";
  m << "command = " << ctx.cfg.command() << "\n";
  m << "version = " << lvs_version() << "\n";
  m << "config = " << (ctx.cfg.source.empty() ? "(defaults)" : ctx.cfg.source) << "\n";
  for (const auto& o : ctx.cfg.overrides) m << "override = " << o << "\n";
  for (const auto& i : ctx.inputs) m << "input = " << i << "\n";
  m << "seeds = none\n";
  m << "status = " << status << "\n";
  m << "exit_code = " << ctx.exit_code << "\n";
  m << "wall_seconds = " << std::setprecision(6) << wall << "\n";
  m << "[results]\n" << ctx.results.str();
  m << ctx.cfg.dump();
}

int report_failure(Context& ctx, const Failure& f, std::ostream& err, double wall) {
  ctx.exit_code = f.code;
  const nlohmann::json rec = {{"status", "error"},    {"command", ctx.cfg.command()}, {"kind", f.kind},
                              {"exit_code", f.code}, {"message", f.message},         {"key", f.key}};
  err << rec.dump() << "\n";
  std::error_code ec;
  fs::create_directories(ctx.out, ec);
  if (!ec) {
    std::ofstream(ctx.out / "error.json") << rec.dump(2) << "\n";
    write_manifest(ctx, "error", wall);
  }
  return f.code;
}

lvs_set* build_set_impl(const std::string& expr, int dim) {
  auto bad = [&](const std::string& why) {
    return Failure{kExitConfig, "config", "set expression '" + expr + "': " + why, ""};
  };
  lvs_set* raw = nullptr;
  check(lvs_set_create(dim, &raw), "set");
  Set set(raw);
  std::size_t pos = 0;
  bool any = false;
  while (pos < expr.size()) {
    const auto open = expr.find('(', pos);
    if (open == std::string::npos) {
      if (!trim(expr.substr(pos)).empty()) throw bad("trailing text");
      break;
    }
    std::string name = trim(expr.substr(pos, open - pos));
    if (!name.empty() && name[0] == '+') name = trim(name.substr(1));
    const auto close = expr.find(')', open);
    if (close == std::string::npos) throw bad("missing ')'");
    const std::vector<double> a = number_list(expr.substr(open + 1, close - open - 1), "set");
    pos = close + 1;
    const auto d = static_cast<std::size_t>(dim);
    auto pt = [&](std::size_t off) {
      std::vector<double> p(3, 0.0);
      for (std::size_t i = 0; i < d; ++i) p[i] = a[off + i];
      return p;
    };
    auto need = [&](std::size_t n) {
      if (a.size() != n) throw bad(name + " takes " + std::to_string(n) + " numbers in dimension " + std::to_string(dim));
    };
    if (name == "ball") {
      need(d + 1);
      check(lvs_set_add_ball(set.get(), pt(0).data(), a[d]), "ball");
    } else if (name == "half_space") {
      need(d + 1);
      check(lvs_set_add_half_space(set.get(), pt(0).data(), a[d]), "half_space");
    } else if (name == "cone") {
      need(2 * d + 1);
      check(lvs_set_add_cone(set.get(), pt(0).data(), pt(d).data(), a[2 * d] * M_PI / 180.0), "cone");
    } else if (name == "box") {
      need(2 * d);
      check(lvs_set_add_box(set.get(), pt(0).data(), pt(d).data()), "box");
    } else if (name == "shell") {
      need(d + 2);
      check(lvs_set_add_shell(set.get(), pt(0).data(), a[d], a[d + 1]), "shell");
    } else {
      throw bad("unknown primitive '" + name + "'");
    }
    any = true;
  }
  if (!any && !trim(expr).empty()) throw bad("no primitive");
  return set.release();
}

}  // namespace

lvs_set* build_set(const std::string& expr, int dim) {
  try {
    return build_set_impl(expr, dim);
  } catch (const Failure& f) {
    throw ConfigError(f.key, f.message);
  }
}

int dispatch(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  Context ctx{cfg, fs::path(cfg.text("run.out")), log, {}, {}, kExitOk};
  auto wall = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
  try {
    validate(cfg);
    fs::create_directories(ctx.out);
    fs::remove(ctx.out / "error.json");
    const std::string cmd = cfg.command();
    if (cmd == "front") cmd_front(ctx);
    else if (cmd == "simulate") cmd_simulate(ctx);
    else if (cmd == "speed") cmd_speed(ctx);
    else if (cmd == "zones") cmd_zones(ctx);
    else if (cmd == "geometry") cmd_geometry(ctx);
    else if (cmd == "certify") cmd_certify(ctx);
    else if (cmd == "radius-search") cmd_radius(ctx);
    write_manifest(ctx, ctx.exit_code == kExitOk ? "ok" : "check failed", wall());
    return ctx.exit_code;
  } catch (const Failure& f) {
    return report_failure(ctx, f, err, wall());
  } catch (const ConfigError& e) {
    return report_failure(ctx, Failure{kExitConfig, "config", e.what(), e.key()}, err, wall());
  } catch (const std::exception& e) {
    return report_failure(ctx, Failure{kExitNumeric, "internal", e.what(), ""}, err, wall());
  }
}

}  // namespace lvcli
