#include "lvspread/lvspread.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <new>
#include <string>

#include "lvspread/certificates.hpp"
#include "lvspread/error.hpp"
#include "lvspread/front.hpp"
#include "lvspread/geometry.hpp"
#include "lvspread/metrics.hpp"
#include "lvspread/model.hpp"
#include "lvspread/simulator.hpp"

struct lvs_profile {
  lvs::FrontProfile p;
};
struct lvs_set {
  lvs::IndicatorSet s;
};
struct lvs_classification {
  lvs::DirectionClassification c;
};
struct lvs_trajectory {
  lvs::Trajectory t;
};
struct lvs_track {
  lvs::FrontTrack t;
};
struct lvs_certificate {
  lvs::CertificateParams c;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_field;

class IoError : public lvs::Error {
 public:
  using lvs::Error::Error;
};

lvs_status fail(lvs_status s, const std::string& msg, const std::string& field = {}) {
  g_error = msg;
  g_field = field;
  return s;
}

template <class F>
lvs_status guarded(F&& f) {
  g_error.clear();
  g_field.clear();
  try {
    f();
    return LVS_OK;
  } catch (const lvs::ValidationError& e) {
    return fail(LVS_ERR_VALIDATION, e.what(), e.field());
  } catch (const lvs::DomainError& e) {
    return fail(LVS_ERR_DOMAIN, e.what());
  } catch (const lvs::ConfigError& e) {
    return fail(LVS_ERR_CONFIG, e.what());
  } catch (const lvs::ConvergenceError& e) {
    return fail(LVS_ERR_CONVERGENCE, e.what());
  } catch (const lvs::NumericError& e) {
    return fail(LVS_ERR_NUMERIC, e.what());
  } catch (const IoError& e) {
    return fail(LVS_ERR_IO, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(LVS_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LVS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LVS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LVS_ERR_INTERNAL, "unknown exception");
  }
}

#define LVS_NEED(ptr)                                              \
  do {                                                             \
    if (!(ptr)) return fail(LVS_ERR_NULL_ARG, #ptr " is NULL");    \
  } while (0)

lvs::ModelParams to_params(const lvs_params& p) {
  lvs::ModelParams m;
  m.d = p.d;
  m.r = p.r;
  m.a = p.a;
  m.b = p.b;
  return m;
}

lvs_params from_params(const lvs::ModelParams& m) { return lvs_params{m.d, m.r, m.a, m.b}; }

lvs::Point to_point(const double x[3]) { return lvs::Point{x[0], x[1], x[2]}; }

lvs::Grid to_grid(const lvs_grid_spec& g) {
  switch (g.kind) {
    case LVS_GRID_LINE: return lvs::Grid::line(g.L, g.h);
    case LVS_GRID_RADIAL: return lvs::Grid::radial(g.N, g.L, g.h);
    case LVS_GRID_PLANE: return lvs::Grid::plane(g.L, g.h);
  }
  throw lvs::ConfigError("unknown grid kind");
}

lvs_grid_spec from_grid(const lvs::Grid& g) {
  lvs_grid_spec s{};
  s.kind = g.kind == lvs::GridKind::line ? LVS_GRID_LINE : g.kind == lvs::GridKind::radial ? LVS_GRID_RADIAL : LVS_GRID_PLANE;
  s.N = g.N;
  s.L = g.L;
  s.h = g.h;
  return s;
}

lvs::FrontOptions to_front_options(const lvs_front_options* o) {
  lvs::FrontOptions f;
  if (!o) return f;
  f.half_length = o->half_length;
  f.n_points = o->n_points;
  f.tol = o->tol;
  f.max_newton = o->max_newton;
  f.max_doublings = o->max_doublings;
  f.tail_tol = o->tail_tol;
  return f;
}

lvs::ClassifyOptions to_classify_options(const lvs_classify_options* o) {
  lvs::ClassifyOptions c;
  if (!o) return c;
  c.m = o->m;
  c.tau0 = o->tau0;
  c.ladder = o->ladder;
  c.ratio_threshold = o->ratio_threshold;
  return c;
}

lvs::RunOptions to_run_options(const lvs_run_options* o) {
  lvs::RunOptions r;
  if (!o) return r;
  r.dt = o->dt;
  r.threads = o->threads;
  r.monitor = o->monitor != 0;
  r.warn_level = o->warn_level;
  return r;
}

std::ofstream open_out(const char* path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream os(p);
  if (!os) throw IoError(std::string("cannot open '") + path + "' for writing");
  return os;
}

lvs_delta_summary from_delta(const lvs::DeltaCheck& d) {
  lvs_delta_summary s{};
  s.literal = d.literal();
  s.corrected = d.corrected();
  s.u1 = d.u1;
  s.v1 = d.v1;
  s.u2 = d.u2;
  s.v2 = d.v2;
  s.v1_corrected = d.v1_corrected;
  s.v2_corrected = d.v2_corrected;
  s.worst_u1 = d.worst_u1;
  s.worst_v1 = d.worst_v1;
  s.worst_u2 = d.worst_u2;
  s.worst_v2 = d.worst_v2;
  s.points = d.points;
  return s;
}

}  // namespace

extern "C" {

const char* lvs_version(void) { return "0.3.0"; }
const char* lvs_last_error(void) { return g_error.c_str(); }
const char* lvs_last_error_field(void) { return g_field.c_str(); }

const char* lvs_status_name(lvs_status s) {
  switch (s) {
    case LVS_OK: return "ok";
    case LVS_ERR_VALIDATION: return "validation";
    case LVS_ERR_DOMAIN: return "domain";
    case LVS_ERR_CONFIG: return "config";
    case LVS_ERR_CONVERGENCE: return "convergence";
    case LVS_ERR_NUMERIC: return "numeric";
    case LVS_ERR_IO: return "io";
    case LVS_ERR_NULL_ARG: return "null-arg";
    case LVS_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

// ---------------------------------------------------------------- model

lvs_status lvs_validate(const lvs_params* p, int strong, double* c_u, double* c_v) {
  LVS_NEED(p);
  return guarded([&] {
    const auto s = lvs::validate(to_params(*p), strong ? lvs::CompetitionMode::strong : lvs::CompetitionMode::any);
    if (c_u) *c_u = s.c_u;
    if (c_v) *c_v = s.c_v;
  });
}

lvs_status lvs_delta0(const lvs_params* p, double* out) {
  LVS_NEED(p);
  LVS_NEED(out);
  return guarded([&] { *out = lvs::delta0(to_params(*p)); });
}

lvs_status lvs_check_bistable_speed(const lvs_params* p, double c_uv) {
  LVS_NEED(p);
  return guarded([&] { lvs::with_bistable_speed(to_params(*p), c_uv); });
}

// --------------------------------------------------------------- fronts

void lvs_front_options_default(lvs_front_options* o) {
  if (!o) return;
  const lvs::FrontOptions f;
  o->half_length = f.half_length;
  o->n_points = f.n_points;
  o->tol = f.tol;
  o->max_newton = f.max_newton;
  o->max_doublings = f.max_doublings;
  o->tail_tol = f.tail_tol;
}

lvs_status lvs_front_solve(const lvs_params* p, const lvs_front_options* opts, lvs_profile** out) {
  LVS_NEED(p);
  LVS_NEED(out);
  return guarded([&] { *out = new lvs_profile{lvs::solve_bistable_front(to_params(*p), to_front_options(opts))}; });
}

lvs_status lvs_profile_read(const char* path, lvs_profile** out) {
  LVS_NEED(path);
  LVS_NEED(out);
  return guarded([&] {
    std::ifstream is(path);
    if (!is) throw IoError(std::string("cannot open profile '") + path + "'");
    *out = new lvs_profile{lvs::read_profile_csv(is)};
  });
}

lvs_status lvs_profile_write(const lvs_profile* prof, const char* path) {
  LVS_NEED(prof);
  LVS_NEED(path);
  return guarded([&] {
    auto os = open_out(path);
    lvs::write_profile_csv(os, prof->p);
  });
}

lvs_status lvs_profile_get_info(const lvs_profile* prof, lvs_profile_info* out) {
  LVS_NEED(prof);
  LVS_NEED(out);
  out->params = from_params(prof->p.params);
  out->speed = prof->p.speed;
  out->residual_norm = prof->p.residual_norm;
  out->n_points = prof->p.xi.size();
  out->half_length = prof->p.half_length();
  out->newton_iterations = static_cast<int>(prof->p.residual_history.size());
  return LVS_OK;
}

lvs_status lvs_profile_data(const lvs_profile* prof, double* xi, double* phi, double* psi, size_t cap) {
  LVS_NEED(prof);
  const size_t n = std::min(cap, prof->p.xi.size());
  if (xi) std::copy_n(prof->p.xi.begin(), n, xi);
  if (phi) std::copy_n(prof->p.phi.begin(), n, phi);
  if (psi) std::copy_n(prof->p.psi.begin(), n, psi);
  return LVS_OK;
}

lvs_status lvs_profile_refined_residual(const lvs_profile* prof, int refine, double* out) {
  LVS_NEED(prof);
  LVS_NEED(out);
  return guarded([&] { *out = lvs::refined_residual(prof->p, refine); });
}

void lvs_profile_free(lvs_profile* prof) { delete prof; }

lvs_status lvs_kpp_front_write(double D, double rho, double c, double half_length, size_t n_points, const char* path,
                               double* residual) {
  return guarded([&] {
    const auto k = lvs::solve_kpp_front(D, rho, c, half_length, n_points);
    if (residual) *residual = k.residual_norm;
    if (path) {
      auto os = open_out(path);
      lvs::write_kpp_csv(os, k);
    }
  });
}

lvs_status lvs_modified_kpp_speed(double b, double eps, double* c_eps, double* beta_eps) {
  return guarded([&] {
    const auto [c, beta] = lvs::modified_kpp_speed(b, eps);
    if (c_eps) *c_eps = c;
    if (beta_eps) *beta_eps = beta;
  });
}

lvs_status lvs_bump_zero(double c, double b_eps, double beta, double* first_zero) {
  LVS_NEED(first_zero);
  return guarded([&] { *first_zero = lvs::solve_bump(c, b_eps, beta).a; });
}

// ----------------------------------------------------------------- sets

lvs_status lvs_set_create(int dim, lvs_set** out) {
  LVS_NEED(out);
  return guarded([&] { *out = new lvs_set{lvs::IndicatorSet(dim)}; });
}

lvs_status lvs_set_add_ball(lvs_set* s, const double centre[3], double radius) {
  LVS_NEED(s);
  LVS_NEED(centre);
  return guarded([&] { s->s.add_ball(to_point(centre), radius); });
}

lvs_status lvs_set_add_half_space(lvs_set* s, const double normal[3], double offset) {
  LVS_NEED(s);
  LVS_NEED(normal);
  return guarded([&] { s->s.add_half_space(to_point(normal), offset); });
}

lvs_status lvs_set_add_cone(lvs_set* s, const double apex[3], const double axis[3], double half_angle) {
  LVS_NEED(s);
  LVS_NEED(apex);
  LVS_NEED(axis);
  return guarded([&] { s->s.add_cone(to_point(apex), to_point(axis), half_angle); });
}

lvs_status lvs_set_add_box(lvs_set* s, const double lo[3], const double hi[3]) {
  LVS_NEED(s);
  LVS_NEED(lo);
  LVS_NEED(hi);
  return guarded([&] { s->s.add_box(to_point(lo), to_point(hi)); });
}

lvs_status lvs_set_add_shell(lvs_set* s, const double centre[3], double r_in, double r_out) {
  LVS_NEED(s);
  LVS_NEED(centre);
  return guarded([&] { s->s.add_shell(to_point(centre), r_in, r_out); });
}

lvs_status lvs_set_contains(const lvs_set* s, const double x[3], int* out) {
  LVS_NEED(s);
  LVS_NEED(x);
  LVS_NEED(out);
  return guarded([&] { *out = s->s.contains(to_point(x)) ? 1 : 0; });
}

lvs_status lvs_set_distance(const lvs_set* s, const double x[3], double* out) {
  LVS_NEED(s);
  LVS_NEED(x);
  LVS_NEED(out);
  return guarded([&] { *out = s->s.distance(to_point(x)); });
}

lvs_status lvs_set_eroded(const lvs_set* s, double rho, lvs_set** out) {
  LVS_NEED(s);
  LVS_NEED(out);
  return guarded([&] { *out = new lvs_set{s->s.eroded(rho)}; });
}

void lvs_set_free(lvs_set* s) { delete s; }

void lvs_classify_options_default(lvs_classify_options* o) {
  if (!o) return;
  const lvs::ClassifyOptions c;
  o->m = c.m;
  o->tau0 = c.tau0;
  o->ladder = c.ladder;
  o->ratio_threshold = c.ratio_threshold;
}

lvs_status lvs_classify(const lvs_set* s, const lvs_classify_options* opts, lvs_classification** out) {
  LVS_NEED(s);
  LVS_NEED(out);
  return guarded([&] { *out = new lvs_classification{lvs::classify_directions(s->s, to_classify_options(opts))}; });
}

lvs_status lvs_classification_counts(const lvs_classification* c, size_t* n, size_t* n_unbounded) {
  LVS_NEED(c);
  if (n) *n = c->c.directions.size();
  if (n_unbounded) *n_unbounded = c->c.n_unbounded();
  return LVS_OK;
}

lvs_status lvs_speed_function(const lvs_classification* c, double c_uv, const double e[3], double* w) {
  LVS_NEED(c);
  LVS_NEED(e);
  LVS_NEED(w);
  return guarded([&] {
    const double x = lvs::speed_function(c->c, c_uv, to_point(e));
    *w = std::isinf(x) ? HUGE_VAL : x;
  });
}

lvs_status lvs_envelope_membership(const lvs_classification* c, double c_uv, const double x[3], int* route_a,
                                   int* route_b) {
  LVS_NEED(c);
  LVS_NEED(x);
  return guarded([&] {
    const auto m = lvs::envelope_membership(c->c, c_uv, to_point(x));
    if (route_a) *route_a = m.route_a;
    if (route_b) *route_b = m.route_b;
  });
}

lvs_status lvs_abcon_coverage(const lvs_set* s, double rho, const lvs_classify_options* opts, double* out) {
  LVS_NEED(s);
  LVS_NEED(out);
  return guarded([&] { *out = lvs::abcon_coverage(s->s, rho, to_classify_options(opts)); });
}

lvs_status lvs_classification_write_csv(const lvs_classification* c, double c_uv, const char* path) {
  LVS_NEED(c);
  LVS_NEED(path);
  return guarded([&] {
    auto os = open_out(path);
    lvs::write_classification_csv(os, c->c, c_uv);
  });
}

void lvs_classification_free(lvs_classification* c) { delete c; }

// ----------------------------------------------------------- simulation

void lvs_run_options_default(lvs_run_options* o) {
  if (!o) return;
  const lvs::RunOptions r;
  o->dt = r.dt;
  o->threads = r.threads;
  o->monitor = r.monitor;
  o->warn_level = r.warn_level;
}

lvs_status lvs_simulate(const lvs_params* p, const lvs_grid_spec* grid, lvs_scenario scenario, const lvs_set* U,
                        const lvs_set* V, double T_final, double snapshot_every, const lvs_run_options* opts,
                        lvs_trajectory** out) {
  LVS_NEED(p);
  LVS_NEED(grid);
  LVS_NEED(U);
  LVS_NEED(out);
  if (scenario == LVS_SCENARIO_C1 && !V) return fail(LVS_ERR_NULL_ARG, "V is NULL (C1 needs both sets)");
  return guarded([&] {
    lvs::ScenarioSpec sc;
    sc.kind = scenario == LVS_SCENARIO_C1 ? lvs::ScenarioSpec::Kind::C1 : lvs::ScenarioSpec::Kind::C2;
    sc.U = U->s;
    sc.V = V ? V->s : lvs::IndicatorSet(U->s.dim());
    *out = new lvs_trajectory{
        lvs::run(to_grid(*grid), sc, to_params(*p), T_final, snapshot_every, to_run_options(opts))};
  });
}

lvs_status lvs_trajectory_read(const char* dir, lvs_trajectory** out) {
  LVS_NEED(dir);
  LVS_NEED(out);
  return guarded([&] { *out = new lvs_trajectory{lvs::read_trajectory(dir)}; });
}

lvs_status lvs_trajectory_write(const lvs_trajectory* t, const char* dir, const char* extra_manifest) {
  LVS_NEED(t);
  LVS_NEED(dir);
  return guarded([&] { lvs::write_trajectory(dir, t->t, extra_manifest ? extra_manifest : ""); });
}

lvs_status lvs_trajectory_get_info(const lvs_trajectory* t, lvs_trajectory_info* out) {
  LVS_NEED(t);
  LVS_NEED(out);
  out->grid = from_grid(t->t.grid);
  out->params = from_params(t->t.params);
  out->n_nodes = t->t.grid.size();
  out->n_snapshots = t->t.snapshots.size();
  out->n_warnings = t->t.warnings.size();
  out->dt = t->t.dt;
  out->wall_seconds = t->t.wall_seconds;
  return LVS_OK;
}

lvs_status lvs_trajectory_snapshot(const lvs_trajectory* t, size_t k, double* time, double* u, double* v, size_t cap) {
  LVS_NEED(t);
  if (k >= t->t.snapshots.size()) return fail(LVS_ERR_DOMAIN, "snapshot index out of range");
  const auto& s = t->t.snapshots[k];
  if (time) *time = s.t;
  const size_t n = std::min(cap, s.u.size());
  if (u) std::copy_n(s.u.begin(), n, u);
  if (v) std::copy_n(s.v.begin(), n, v);
  return LVS_OK;
}

const char* lvs_trajectory_warning(const lvs_trajectory* t, size_t i) {
  if (!t || i >= t->t.warnings.size()) return nullptr;
  return t->t.warnings[i].c_str();
}

void lvs_trajectory_free(lvs_trajectory* t) { delete t; }

lvs_status lvs_radius_search(const lvs_params* p, const lvs_grid_spec* grid, double rho_max, int n_bisect,
                             double T_probe, double success_level, int threads, lvs_radius_result* out) {
  LVS_NEED(p);
  LVS_NEED(grid);
  LVS_NEED(out);
  return guarded([&] {
    const auto r = lvs::invasion_radius_search(to_params(*p), to_grid(*grid), rho_max, n_bisect, T_probe,
                                               success_level, threads);
    out->rho_star = r.rho_star;
    out->rho_fail = r.rho_fail;
    out->u_center_fail = r.u_center_fail;
    out->u_center_success = r.u_center_success;
    out->runs = r.runs;
  });
}

// -------------------------------------------------------------- metrics

lvs_status lvs_track_level(const lvs_trajectory* t, lvs_field f, double level, const double direction[3],
                           lvs_track** out) {
  LVS_NEED(t);
  LVS_NEED(direction);
  LVS_NEED(out);
  return guarded([&] {
    *out = new lvs_track{
        lvs::track_level(t->t, f == LVS_FIELD_U ? lvs::Field::u : lvs::Field::v, level, to_point(direction))};
  });
}

lvs_status lvs_track_write_csv(const lvs_track* tr, const char* path) {
  LVS_NEED(tr);
  LVS_NEED(path);
  return guarded([&] {
    auto os = open_out(path);
    lvs::write_track_csv(os, tr->t);
  });
}

lvs_status lvs_fit_speed(const lvs_track* tr, lvs_speed_estimate* out) {
  LVS_NEED(tr);
  LVS_NEED(out);
  return guarded([&] {
    const auto e = lvs::fit_speed(tr->t);
    out->speed = e.speed;
    out->intercept = e.intercept;
    out->t1 = e.t1;
    out->t2 = e.t2;
    out->rms_residual = e.rms_residual;
    out->n_samples = e.n_samples;
  });
}

void lvs_track_free(lvs_track* tr) { delete tr; }

lvs_status lvs_check_zones(const lvs_trajectory* t, double c_uv, const double* c_list, size_t n_c, double tolerance,
                           const char* report_path, int* pass) {
  LVS_NEED(t);
  LVS_NEED(c_list);
  return guarded([&] {
    lvs::Speeds sp = lvs::validate(t->t.params);
    if (std::isfinite(c_uv)) sp.c_uv = c_uv;
    const auto rep = lvs::check_zones(t->t, sp, std::vector<double>(c_list, c_list + n_c), tolerance);
    if (report_path) {
      auto os = open_out(report_path);
      lvs::write_zone_report(os, rep);
    }
    if (pass) *pass = rep.pass;
  });
}

lvs_status lvs_exponential_bound(const lvs_trajectory* t, lvs_field f, const double direction[3], lvs_exp_bound* out) {
  LVS_NEED(t);
  LVS_NEED(direction);
  LVS_NEED(out);
  return guarded([&] {
    const auto r = lvs::exponential_bound_check(t->t, f == LVS_FIELD_U ? lvs::Field::u : lvs::Field::v,
                                                to_point(direction));
    out->ok = r.ok;
    out->X = r.X;
    out->lambda = r.lambda;
    out->speed = r.speed;
    out->worst_excess = r.worst_excess;
    out->worst_t = r.worst_t;
    out->worst_x = r.worst_x;
  });
}

// --------------------------------------------------------- certificates

lvs_status lvs_certificate_assemble(const lvs_profile* prof, double eps, lvs_cert_kind kind, int N,
                                    lvs_certificate** out) {
  LVS_NEED(prof);
  LVS_NEED(out);
  return guarded([&] {
    *out = new lvs_certificate{lvs::assemble_certificate(
        prof->p, eps, kind == LVS_CERT_SUB ? lvs::CertKind::sub : lvs::CertKind::super, N)};
  });
}

lvs_status lvs_certificate_get_info(const lvs_certificate* c, lvs_certificate_info* out) {
  LVS_NEED(c);
  LVS_NEED(out);
  const auto& k = c->c;
  out->kind = k.kind == lvs::CertKind::sub ? LVS_CERT_SUB : LVS_CERT_SUPER;
  out->N = k.N;
  out->c_uv = k.c_uv;
  out->eps = k.eps;
  out->delta0 = k.delta0;
  out->delta = k.delta;
  out->mu = k.mu;
  out->omega = k.omega;
  out->omega_printed = k.omega_printed;
  out->shift = k.shift;
  out->M = k.M;
  out->M_eps = k.M_eps;
  out->k1 = k.k1;
  out->k2 = k.k2;
  out->R = k.R;
  out->rho = k.rho;
  out->R_eps = k.R_eps;
  out->T_eps = k.T_eps;
  out->T_max = k.T_max;
  out->ramp_H = k.ramp.H;
  return LVS_OK;
}

lvs_status lvs_certificate_check_constants(const lvs_certificate* c, const lvs_profile* prof, size_t* n_total,
                                           size_t* n_failed) {
  LVS_NEED(c);
  LVS_NEED(prof);
  return guarded([&] {
    const auto checks = lvs::check_constants(c->c, prof->p);
    if (n_total) *n_total = checks.size();
    if (n_failed) *n_failed = static_cast<size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& x) { return !x.ok; }));
  });
}

void lvs_scan_options_default(lvs_scan_options* o) {
  if (!o) return;
  const lvs::ScanOptions s;
  o->t_max = s.t_max;
  o->n_t = s.n_t;
  o->x_factor = s.x_factor;
  o->n_coarse = s.n_coarse;
  o->fine_step = s.fine_step;
  o->rel_slack = s.rel_slack;
}

lvs_status lvs_certificate_scan(const lvs_certificate* c, const lvs_profile* prof, const lvs_scan_options* opts,
                                const char* report_path, lvs_scan_summary* out) {
  LVS_NEED(c);
  LVS_NEED(prof);
  LVS_NEED(out);
  return guarded([&] {
    lvs::ScanOptions so;
    if (opts) {
      so.t_max = opts->t_max;
      so.n_t = opts->n_t;
      so.x_factor = opts->x_factor;
      so.n_coarse = opts->n_coarse;
      so.fine_step = opts->fine_step;
      so.rel_slack = opts->rel_slack;
    }
    const auto rep = lvs::residual_scan(c->c, prof->p, so);
    if (report_path) {
      auto os = open_out(report_path);
      lvs::write_certificate(os, c->c);
      lvs::write_residual_report(os, rep);
    }
    out->verdict = rep.verdict == lvs::Verdict::pass   ? LVS_VERDICT_PASS
                   : rep.verdict == lvs::Verdict::fail ? LVS_VERDICT_FAIL
                                                       : LVS_VERDICT_INCONCLUSIVE;
    out->violations = rep.violations;
    out->noisy = rep.noisy;
    out->n1_extreme = rep.n1_extreme;
    out->n2_extreme = rep.n2_extreme;
    out->envelope_rate = rep.envelope_rate;
    out->t_max = rep.t_max;
    out->x_max = rep.x_max;
  });
}

lvs_status lvs_certificate_delta(const lvs_certificate* c, const lvs_profile* prof, lvs_delta_summary* out) {
  LVS_NEED(c);
  LVS_NEED(prof);
  LVS_NEED(out);
  return guarded([&] {
    if (c->c.kind != lvs::CertKind::super) throw lvs::ConfigError("delta conclusions need a supersolution certificate");
    *out = from_delta(lvs::check_delta_conclusions(c->c, prof->p));
  });
}

lvs_status lvs_certificate_check_solution(const lvs_certificate* c, const lvs_profile* prof, double h, double margin,
                                          double T, double snapshot_every, int threads, lvs_solution_check* out) {
  LVS_NEED(c);
  LVS_NEED(prof);
  LVS_NEED(out);
  return guarded([&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& k = c->c;
    const bool sub = k.kind == lvs::CertKind::sub;
    const double reach = sub ? k.rho : k.R;
    const lvs::Grid g = lvs::Grid::radial(k.N, reach + margin, h);
    const double T_run = sub ? T : std::min(T, k.T_max);
    lvs::RunOptions ro;
    ro.monitor = false;
    ro.threads = threads;
    const auto step_run = lvs::run_from(g, lvs::lemma_initial_state(k, g), k.params, T_run, snapshot_every, ro);
    const auto cert_run = lvs::run_from(g, lvs::certificate_state(k, prof->p, g), k.params, T_run, snapshot_every, ro);
    // sub: the step data sits above the subsolution pair; super: below.
    const auto oc = sub ? lvs::check_ordering(step_run, cert_run) : lvs::check_ordering(cert_run, step_run);
    *out = lvs_solution_check{};
    out->snapshots = oc.snapshots;
    out->ordering_violations = oc.violations;
    out->ordering_worst = oc.worst;
    out->T = T_run;
    if (!sub) {
      out->delta_checked = 1;
      out->delta = from_delta(lvs::check_delta_on_solution(k, step_run));
    }
    out->wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  });
}

lvs_status lvs_certificate_write(const lvs_certificate* c, const char* path) {
  LVS_NEED(c);
  LVS_NEED(path);
  return guarded([&] {
    auto os = open_out(path);
    lvs::write_certificate(os, c->c);
  });
}

void lvs_certificate_free(lvs_certificate* c) { delete c; }

}  // extern "C"
