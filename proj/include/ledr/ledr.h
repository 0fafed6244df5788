// SPDX-License-Identifier: Apache-2.0
/*
 * C interface to the ledr library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns a ledr_status; on failure a description is
 * available from ledr_last_error_message() on the same thread until the next
 * failing call. Output parameters are left untouched on failure.
 */
#ifndef LEDR_LEDR_H
#define LEDR_LEDR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LEDR_API __declspec(dllexport)
#else
#define LEDR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ledr_status {
  LEDR_OK = 0,
  LEDR_ERR_INVALID_ARGUMENT = 1,
  LEDR_ERR_VALIDATION = 2,
  LEDR_ERR_CHART_EXIT = 3,
  LEDR_ERR_DIVERGENCE = 4,
  LEDR_ERR_IO = 5,
  LEDR_ERR_NUMERICAL = 6,
  LEDR_ERR_INTERNAL = 7
} ledr_status;

typedef enum ledr_scheme { LEDR_SCHEME_RK4 = 0, LEDR_SCHEME_SEMI_IMPLICIT_EULER = 1 } ledr_scheme;

typedef enum ledr_regime {
  LEDR_REGIME_OSCILLATORY = 0,
  LEDR_REGIME_DEGENERATE_BOUNDARY = 1,
  LEDR_REGIME_DIVERGENT_POSITIVE = 2,
  LEDR_REGIME_DIVERGENT_NEGATIVE = 3,
  LEDR_REGIME_FLAT_DRIFT = 4
} ledr_regime;

typedef struct ledr_world ledr_world;
typedef struct ledr_trajectory ledr_trajectory;
typedef struct ledr_series ledr_series;
typedef struct ledr_config ledr_config;

LEDR_API const char* ledr_version(void);
LEDR_API const char* ledr_status_string(ledr_status status);
LEDR_API const char* ledr_last_error_message(void);
/* Step index attached to the last chart-exit or divergence error, else 0. */
LEDR_API size_t ledr_last_error_step(void);
/* Field name attached to the last validation error, else "". */
LEDR_API const char* ledr_last_error_field(void);

/* Worlds */
LEDR_API ledr_status ledr_world_flat(int dim, ledr_world** out);
LEDR_API ledr_status ledr_world_sphere(double radius, ledr_world** out);
LEDR_API ledr_status ledr_world_constant_k(double curvature, ledr_world** out);
LEDR_API void ledr_world_free(ledr_world* world);
LEDR_API int ledr_world_dim(const ledr_world* world);
/* Sectional curvature at x of the plane spanned by u and v (arrays of dim). */
LEDR_API ledr_status ledr_world_sectional_curvature(const ledr_world* world, const double* x, const double* u,
                                                    const double* v, double* out);

/* Geodesics */
LEDR_API ledr_status ledr_integrate_geodesic(const ledr_world* world, const double* x0, const double* v0, double h,
                                             size_t steps, ledr_scheme scheme, ledr_trajectory** out);
LEDR_API void ledr_trajectory_free(ledr_trajectory* traj);
LEDR_API size_t ledr_trajectory_size(const ledr_trajectory* traj);
LEDR_API int ledr_trajectory_dim(const ledr_trajectory* traj);
/* Copies sample k into x and v (each of length dim; either may be NULL). */
LEDR_API ledr_status ledr_trajectory_sample(const ledr_trajectory* traj, size_t k, double* x, double* v);
LEDR_API ledr_status ledr_trajectory_write_csv(const ledr_trajectory* traj, const char* path);

/* LEDR series */
LEDR_API ledr_status ledr_series_from_trajectories(const ledr_trajectory* true_traj,
                                                   const ledr_trajectory* model_traj, ledr_series** out);
/* Constant-curvature recurrence; returns steps + 2 samples. */
LEDR_API ledr_status ledr_series_recurrence_constant(const double* xi0, const double* xi1, int dim, size_t steps,
                                                     double h, double curvature, ledr_series** out);
/* h <= 0 infers the step from the t column. */
LEDR_API ledr_status ledr_series_read_csv(const char* path, double h, ledr_series** out);
LEDR_API ledr_status ledr_series_write_csv(const ledr_series* series, const char* path);
LEDR_API void ledr_series_free(ledr_series* series);
LEDR_API size_t ledr_series_size(const ledr_series* series);
LEDR_API int ledr_series_dim(const ledr_series* series);
LEDR_API double ledr_series_step(const ledr_series* series);
LEDR_API ledr_status ledr_series_get(const ledr_series* series, size_t k, double* xi);

/* Stability and estimation */
typedef struct ledr_stability {
  double lambda;
  double root_re[2];
  double root_im[2];
  double max_root_modulus;
  ledr_regime regime;
  int has_omega_d;
  double omega_d;
} ledr_stability;

LEDR_API ledr_status ledr_classify_stability(double curvature, double h, ledr_stability* out);
LEDR_API const char* ledr_regime_string(ledr_regime regime);
LEDR_API ledr_status ledr_discrete_frequency(double curvature, double h, double* out);

typedef struct ledr_estimate_summary {
  size_t n_valid;
  double median;
  double q1;
  double q3;
  double iqr;
} ledr_estimate_summary;

/* json_path may be NULL; otherwise the per-step estimate is written there. */
LEDR_API ledr_status ledr_estimate_curvature(const ledr_series* series, ledr_estimate_summary* summary,
                                             const char* json_path);

typedef struct ledr_frequency_fit {
  double omega;
  double amplitude;
  double phase;
  double residual;
} ledr_frequency_fit;

/* omega_hint <= 0 selects the zero-crossing initial guess. */
LEDR_API ledr_status ledr_fit_frequency(const ledr_series* series, int component, double omega_hint,
                                        ledr_frequency_fit* out);

/* Configs and commands */
LEDR_API ledr_status ledr_config_load(const char* path, ledr_config** out);
LEDR_API void ledr_config_free(ledr_config* config);
LEDR_API ledr_status ledr_config_set_h(ledr_config* config, double h);
LEDR_API ledr_status ledr_config_set_steps(ledr_config* config, size_t steps);
LEDR_API ledr_status ledr_config_set_seed(ledr_config* config, uint64_t seed);
/* Output directory from the config's `out` key, or "" when unset. */
LEDR_API const char* ledr_config_out(const ledr_config* config);

LEDR_API ledr_status ledr_cmd_simulate(const ledr_config* config, const char* out_dir);
/* horizon <= 0 selects 4*pi*r. */
LEDR_API ledr_status ledr_cmd_sphere_plane(double r, double h, double horizon, const char* out_dir);
LEDR_API ledr_status ledr_cmd_stability(double k_min, double k_max, size_t k_steps, double h_min, double h_max,
                                        size_t h_steps, const char* out_dir);
/* h <= 0 infers the step from the t column. */
LEDR_API ledr_status ledr_cmd_estimate_k(const char* input_csv, double h, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* LEDR_LEDR_H */
