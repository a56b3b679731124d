#pragma once

/* C interface to the lvspread core. Every call returns an lvs_status; on
 * failure lvs_last_error() holds a message for the calling thread. Handles
 * are opaque and released with the matching *_free (NULL is accepted). */

#include <stddef.h>

#if defined(_WIN32)
#define LVS_API __declspec(dllexport)
#elif defined(__GNUC__)
#define LVS_API __attribute__((visibility("default")))
#else
#define LVS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lvs_status {
  LVS_OK = 0,
  LVS_ERR_VALIDATION = 1,
  LVS_ERR_DOMAIN = 2,
  LVS_ERR_CONFIG = 3,
  LVS_ERR_CONVERGENCE = 4,
  LVS_ERR_NUMERIC = 5,
  LVS_ERR_IO = 6,
  LVS_ERR_NULL_ARG = 7,
  LVS_ERR_INTERNAL = 8
} lvs_status;

typedef struct lvs_profile lvs_profile;
typedef struct lvs_set lvs_set;
typedef struct lvs_classification lvs_classification;
typedef struct lvs_trajectory lvs_trajectory;
typedef struct lvs_track lvs_track;
typedef struct lvs_certificate lvs_certificate;

typedef struct lvs_params {
  double d, r, a, b;
} lvs_params;

LVS_API const char* lvs_version(void);
LVS_API const char* lvs_last_error(void);
/* Name of the offending field after LVS_ERR_VALIDATION, "" otherwise. */
LVS_API const char* lvs_last_error_field(void);
LVS_API const char* lvs_status_name(lvs_status s);

/* ---- model ---- */

/* strong != 0 also requires a, b > 1. */
LVS_API lvs_status lvs_validate(const lvs_params* p, int strong, double* c_u, double* c_v);
LVS_API lvs_status lvs_delta0(const lvs_params* p, double* out);
LVS_API lvs_status lvs_check_bistable_speed(const lvs_params* p, double c_uv);

/* ---- fronts ---- */

typedef struct lvs_front_options {
  double half_length;
  size_t n_points;
  double tol;
  int max_newton;
  int max_doublings;
  double tail_tol;
} lvs_front_options;

typedef struct lvs_profile_info {
  lvs_params params;
  double speed;
  double residual_norm;
  size_t n_points;
  double half_length;
  int newton_iterations;
} lvs_profile_info;

LVS_API void lvs_front_options_default(lvs_front_options* o);
/* opts may be NULL. */
LVS_API lvs_status lvs_front_solve(const lvs_params* p, const lvs_front_options* opts, lvs_profile** out);
LVS_API lvs_status lvs_profile_read(const char* path, lvs_profile** out);
LVS_API lvs_status lvs_profile_write(const lvs_profile* prof, const char* path);
LVS_API lvs_status lvs_profile_get_info(const lvs_profile* prof, lvs_profile_info* out);
/* Copies min(cap, n) samples; any output pointer may be NULL. */
LVS_API lvs_status lvs_profile_data(const lvs_profile* prof, double* xi, double* phi, double* psi, size_t cap);
LVS_API lvs_status lvs_profile_refined_residual(const lvs_profile* prof, int refine, double* out);
LVS_API void lvs_profile_free(lvs_profile* prof);

LVS_API lvs_status lvs_kpp_front_write(double D, double rho, double c, double half_length, size_t n_points,
                                       const char* path, double* residual);
LVS_API lvs_status lvs_modified_kpp_speed(double b, double eps, double* c_eps, double* beta_eps);
/* First zero of the bump solution, or an error when none is reached. */
LVS_API lvs_status lvs_bump_zero(double c, double b_eps, double beta, double* first_zero);

/* ---- sets and directions ---- */

LVS_API lvs_status lvs_set_create(int dim, lvs_set** out);
LVS_API lvs_status lvs_set_add_ball(lvs_set* s, const double centre[3], double radius);
LVS_API lvs_status lvs_set_add_half_space(lvs_set* s, const double normal[3], double offset);
LVS_API lvs_status lvs_set_add_cone(lvs_set* s, const double apex[3], const double axis[3], double half_angle);
LVS_API lvs_status lvs_set_add_box(lvs_set* s, const double lo[3], const double hi[3]);
LVS_API lvs_status lvs_set_add_shell(lvs_set* s, const double centre[3], double r_in, double r_out);
LVS_API lvs_status lvs_set_contains(const lvs_set* s, const double x[3], int* out);
LVS_API lvs_status lvs_set_distance(const lvs_set* s, const double x[3], double* out);
LVS_API lvs_status lvs_set_eroded(const lvs_set* s, double rho, lvs_set** out);
LVS_API void lvs_set_free(lvs_set* s);

typedef struct lvs_classify_options {
  size_t m;
  double tau0;
  int ladder;
  double ratio_threshold;
} lvs_classify_options;

LVS_API void lvs_classify_options_default(lvs_classify_options* o);
LVS_API lvs_status lvs_classify(const lvs_set* s, const lvs_classify_options* opts, lvs_classification** out);
LVS_API lvs_status lvs_classification_counts(const lvs_classification* c, size_t* n, size_t* n_unbounded);
/* w(e); +inf is returned as HUGE_VAL. */
LVS_API lvs_status lvs_speed_function(const lvs_classification* c, double c_uv, const double e[3], double* w);
LVS_API lvs_status lvs_envelope_membership(const lvs_classification* c, double c_uv, const double x[3], int* route_a,
                                           int* route_b);
LVS_API lvs_status lvs_abcon_coverage(const lvs_set* s, double rho, const lvs_classify_options* opts, double* out);
LVS_API lvs_status lvs_classification_write_csv(const lvs_classification* c, double c_uv, const char* path);
LVS_API void lvs_classification_free(lvs_classification* c);

/* ---- simulation ---- */

typedef enum lvs_grid_kind { LVS_GRID_LINE = 0, LVS_GRID_RADIAL = 1, LVS_GRID_PLANE = 2 } lvs_grid_kind;
typedef enum lvs_scenario { LVS_SCENARIO_C1 = 0, LVS_SCENARIO_C2 = 1 } lvs_scenario;
typedef enum lvs_field { LVS_FIELD_U = 0, LVS_FIELD_V = 1 } lvs_field;

typedef struct lvs_grid_spec {
  lvs_grid_kind kind;
  int N;     /* radial only */
  double L;
  double h;
} lvs_grid_spec;

typedef struct lvs_run_options {
  double dt;  /* 0: default */
  int threads;
  int monitor;
  double warn_level;
} lvs_run_options;

typedef struct lvs_trajectory_info {
  lvs_grid_spec grid;
  lvs_params params;
  size_t n_nodes;
  size_t n_snapshots;
  size_t n_warnings;
  double dt;
  double wall_seconds;
} lvs_trajectory_info;

LVS_API void lvs_run_options_default(lvs_run_options* o);
/* V may be NULL for C2. opts may be NULL. */
LVS_API lvs_status lvs_simulate(const lvs_params* p, const lvs_grid_spec* grid, lvs_scenario scenario, const lvs_set* U,
                                const lvs_set* V, double T_final, double snapshot_every, const lvs_run_options* opts,
                                lvs_trajectory** out);
LVS_API lvs_status lvs_trajectory_read(const char* dir, lvs_trajectory** out);
/* extra_manifest (may be NULL) is appended to manifest.txt verbatim. */
LVS_API lvs_status lvs_trajectory_write(const lvs_trajectory* t, const char* dir, const char* extra_manifest);
LVS_API lvs_status lvs_trajectory_get_info(const lvs_trajectory* t, lvs_trajectory_info* out);
LVS_API lvs_status lvs_trajectory_snapshot(const lvs_trajectory* t, size_t k, double* time, double* u, double* v,
                                           size_t cap);
LVS_API const char* lvs_trajectory_warning(const lvs_trajectory* t, size_t i);
LVS_API void lvs_trajectory_free(lvs_trajectory* t);

typedef struct lvs_radius_result {
  double rho_star;
  double rho_fail;
  double u_center_fail;
  double u_center_success;
  int runs;
} lvs_radius_result;

LVS_API lvs_status lvs_radius_search(const lvs_params* p, const lvs_grid_spec* grid, double rho_max, int n_bisect,
                                     double T_probe, double success_level, int threads, lvs_radius_result* out);

/* ---- metrics ---- */

typedef struct lvs_speed_estimate {
  double speed;
  double intercept;
  double t1, t2;
  double rms_residual;
  size_t n_samples;
} lvs_speed_estimate;

LVS_API lvs_status lvs_track_level(const lvs_trajectory* t, lvs_field f, double level, const double direction[3],
                                   lvs_track** out);
LVS_API lvs_status lvs_track_write_csv(const lvs_track* tr, const char* path);
LVS_API lvs_status lvs_fit_speed(const lvs_track* tr, lvs_speed_estimate* out);
LVS_API void lvs_track_free(lvs_track* tr);

/* c_uv may be NaN when unknown. report_path may be NULL. */
LVS_API lvs_status lvs_check_zones(const lvs_trajectory* t, double c_uv, const double* c_list, size_t n_c,
                                   double tolerance, const char* report_path, int* pass);

typedef struct lvs_exp_bound {
  int ok;
  double X, lambda, speed;
  double worst_excess, worst_t, worst_x;
} lvs_exp_bound;

LVS_API lvs_status lvs_exponential_bound(const lvs_trajectory* t, lvs_field f, const double direction[3],
                                         lvs_exp_bound* out);

/* ---- certificates ---- */

typedef enum lvs_cert_kind { LVS_CERT_SUB = 0, LVS_CERT_SUPER = 1 } lvs_cert_kind;
typedef enum lvs_verdict { LVS_VERDICT_PASS = 0, LVS_VERDICT_FAIL = 1, LVS_VERDICT_INCONCLUSIVE = 2 } lvs_verdict;

typedef struct lvs_certificate_info {
  lvs_cert_kind kind;
  int N;
  double c_uv, eps, delta0, delta, mu, omega, omega_printed, shift;
  double M, M_eps, k1, k2;
  double R, rho, R_eps, T_eps, T_max;
  double ramp_H;
} lvs_certificate_info;

typedef struct lvs_scan_options {
  double t_max;
  size_t n_t;
  double x_factor;
  size_t n_coarse;
  double fine_step;
  double rel_slack;
} lvs_scan_options;

typedef struct lvs_scan_summary {
  lvs_verdict verdict;
  size_t violations;
  size_t noisy;
  double n1_extreme, n2_extreme;
  double envelope_rate;
  double t_max, x_max;
} lvs_scan_summary;

typedef struct lvs_delta_summary {
  int literal, corrected;
  int u1, v1, u2, v2, v1_corrected, v2_corrected;
  double worst_u1, worst_v1, worst_u2, worst_v2;
  size_t points;
} lvs_delta_summary;

typedef struct lvs_solution_check {
  size_t snapshots;
  size_t ordering_violations;
  double ordering_worst;
  int delta_checked;  /* super only */
  lvs_delta_summary delta;
  double T;
  double wall_seconds;
} lvs_solution_check;

LVS_API lvs_status lvs_certificate_assemble(const lvs_profile* prof, double eps, lvs_cert_kind kind, int N,
                                            lvs_certificate** out);
LVS_API lvs_status lvs_certificate_get_info(const lvs_certificate* c, lvs_certificate_info* out);
LVS_API lvs_status lvs_certificate_check_constants(const lvs_certificate* c, const lvs_profile* prof, size_t* n_total,
                                                   size_t* n_failed);
LVS_API void lvs_scan_options_default(lvs_scan_options* o);
/* opts and report_path may be NULL. */
LVS_API lvs_status lvs_certificate_scan(const lvs_certificate* c, const lvs_profile* prof, const lvs_scan_options* opts,
                                        const char* report_path, lvs_scan_summary* out);
LVS_API lvs_status lvs_certificate_delta(const lvs_certificate* c, const lvs_profile* prof, lvs_delta_summary* out);
/* Simulates the certificate pair and the step data on a radial grid of
 * spacing h reaching margin past the certificate radius, up to T (the super
 * case also stops at T_max), and checks the order between the two runs. */
LVS_API lvs_status lvs_certificate_check_solution(const lvs_certificate* c, const lvs_profile* prof, double h,
                                                  double margin, double T, double snapshot_every, int threads,
                                                  lvs_solution_check* out);
LVS_API lvs_status lvs_certificate_write(const lvs_certificate* c, const char* path);
LVS_API void lvs_certificate_free(lvs_certificate* c);

#ifdef __cplusplus
}
#endif
