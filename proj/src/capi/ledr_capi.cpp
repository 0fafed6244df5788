// SPDX-License-Identifier: Apache-2.0
#include "ledr/ledr.h"

#include <new>
#include <string>

#include "ledr/commands.hpp"
#include "ledr/error.hpp"

struct ledr_world {
  ledr::WorldPreset preset;
};

struct ledr_trajectory {
  ledr::Trajectory traj;
};

struct ledr_series {
  ledr::DiscreteLedrSeries series;
};

struct ledr_config {
  ledr::ExperimentConfig config;
};

namespace {

struct LastError {
  std::string message;
  std::string field;
  std::size_t step = 0;
};

thread_local LastError g_last;

ledr_status fail(ledr_status status, std::string message, std::string field = {}, std::size_t step = 0) {
  g_last.message = std::move(message);
  g_last.field = std::move(field);
  g_last.step = step;
  return status;
}

ledr_status from_kind(ledr::ErrorKind kind) {
  using ledr::ErrorKind;
  switch (kind) {
    case ErrorKind::invalid_argument:
    case ErrorKind::dimension_mismatch:
    case ErrorKind::no_oracle: return LEDR_ERR_INVALID_ARGUMENT;
    case ErrorKind::non_finite:
    case ErrorKind::degenerate:
    case ErrorKind::no_oscillation: return LEDR_ERR_NUMERICAL;
    case ErrorKind::chart_exit: return LEDR_ERR_CHART_EXIT;
    case ErrorKind::divergence: return LEDR_ERR_DIVERGENCE;
    case ErrorKind::validation:
    case ErrorKind::schema: return LEDR_ERR_VALIDATION;
    case ErrorKind::io: return LEDR_ERR_IO;
  }
  return LEDR_ERR_INTERNAL;
}

template <typename F>
ledr_status guard(F&& body) {
  try {
    body();
    return LEDR_OK;
  } catch (const ledr::ChartExitError& e) {
    return fail(LEDR_ERR_CHART_EXIT, e.what(), {}, e.step());
  } catch (const ledr::DivergenceError& e) {
    return fail(LEDR_ERR_DIVERGENCE, e.what(), {}, e.step());
  } catch (const ledr::ValidationError& e) {
    return fail(from_kind(e.kind()), e.what(), e.field());
  } catch (const ledr::Error& e) {
    return fail(from_kind(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LEDR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LEDR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LEDR_ERR_INTERNAL, "unknown error");
  }
}

#define LEDR_REQUIRE(ptr)                                                         \
  do {                                                                            \
    if (!(ptr)) return fail(LEDR_ERR_INVALID_ARGUMENT, #ptr " must not be NULL"); \
  } while (0)

ledr::Vector to_vector(const double* data, int n) { return Eigen::Map<const ledr::Vector>(data, n); }

ledr_regime to_c(ledr::Regime r) {
  switch (r) {
    case ledr::Regime::oscillatory: return LEDR_REGIME_OSCILLATORY;
    case ledr::Regime::degenerate_boundary: return LEDR_REGIME_DEGENERATE_BOUNDARY;
    case ledr::Regime::divergent_positive: return LEDR_REGIME_DIVERGENT_POSITIVE;
    case ledr::Regime::divergent_negative: return LEDR_REGIME_DIVERGENT_NEGATIVE;
    case ledr::Regime::flat_drift: return LEDR_REGIME_FLAT_DRIFT;
  }
  return LEDR_REGIME_FLAT_DRIFT;
}

ledr_status make_world(const ledr::WorldDescriptor& d, ledr_world** out) {
  LEDR_REQUIRE(out);
  return guard([&] { *out = new ledr_world{ledr::make_world(d)}; });
}

}  // namespace

extern "C" {

const char* ledr_version(void) { return "0.1.0"; }

const char* ledr_status_string(ledr_status status) {
  switch (status) {
    case LEDR_OK: return "ok";
    case LEDR_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LEDR_ERR_VALIDATION: return "validation error";
    case LEDR_ERR_CHART_EXIT: return "chart exit";
    case LEDR_ERR_DIVERGENCE: return "divergence";
    case LEDR_ERR_IO: return "i/o error";
    case LEDR_ERR_NUMERICAL: return "numerical error";
    case LEDR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ledr_last_error_message(void) { return g_last.message.c_str(); }
size_t ledr_last_error_step(void) { return g_last.step; }
const char* ledr_last_error_field(void) { return g_last.field.c_str(); }

ledr_status ledr_world_flat(int dim, ledr_world** out) {
  if (dim < 1) return fail(LEDR_ERR_INVALID_ARGUMENT, "dimension must be >= 1");
  return make_world(ledr::WorldDescriptor::flat(dim), out);
}

ledr_status ledr_world_sphere(double radius, ledr_world** out) {
  return make_world(ledr::WorldDescriptor::sphere(radius), out);
}

ledr_status ledr_world_constant_k(double curvature, ledr_world** out) {
  return make_world(ledr::WorldDescriptor::constant_k(curvature), out);
}

void ledr_world_free(ledr_world* world) { delete world; }

int ledr_world_dim(const ledr_world* world) { return world ? world->preset.dim() : 0; }

ledr_status ledr_world_sectional_curvature(const ledr_world* world, const double* x, const double* u,
                                           const double* v, double* out) {
  LEDR_REQUIRE(world);
  LEDR_REQUIRE(x);
  LEDR_REQUIRE(u);
  LEDR_REQUIRE(v);
  LEDR_REQUIRE(out);
  return guard([&] {
    const int n = world->preset.dim();
    const ledr::ChartPoint p(to_vector(x, n));
    const ledr::CurvatureValue R = ledr::curvature_at(world->preset.connection, p);
    *out = ledr::sectional_curvature(world->preset.metric, R, ledr::TangentVector(p, to_vector(u, n)),
                                     ledr::TangentVector(p, to_vector(v, n)));
  });
}

ledr_status ledr_integrate_geodesic(const ledr_world* world, const double* x0, const double* v0, double h,
                                    size_t steps, ledr_scheme scheme, ledr_trajectory** out) {
  LEDR_REQUIRE(world);
  LEDR_REQUIRE(x0);
  LEDR_REQUIRE(v0);
  LEDR_REQUIRE(out);
  if (scheme != LEDR_SCHEME_RK4 && scheme != LEDR_SCHEME_SEMI_IMPLICIT_EULER)
    return fail(LEDR_ERR_INVALID_ARGUMENT, "unknown integration scheme");
  return guard([&] {
    const int n = world->preset.dim();
    const ledr::ChartPoint p(to_vector(x0, n));
    const auto s = scheme == LEDR_SCHEME_RK4 ? ledr::Scheme::rk4 : ledr::Scheme::semi_implicit_euler;
    *out = new ledr_trajectory{
        ledr::integrate_geodesic(world->preset.connection, p, ledr::TangentVector(p, to_vector(v0, n)), h, steps, s)};
  });
}

void ledr_trajectory_free(ledr_trajectory* traj) { delete traj; }
size_t ledr_trajectory_size(const ledr_trajectory* traj) { return traj ? traj->traj.size() : 0; }
int ledr_trajectory_dim(const ledr_trajectory* traj) { return traj ? traj->traj.dim() : 0; }

ledr_status ledr_trajectory_sample(const ledr_trajectory* traj, size_t k, double* x, double* v) {
  LEDR_REQUIRE(traj);
  if (k >= traj->traj.size()) return fail(LEDR_ERR_INVALID_ARGUMENT, "sample index out of range");
  const int n = traj->traj.dim();
  for (int i = 0; i < n; ++i) {
    if (x) x[i] = traj->traj.points[k][i];
    if (v) v[i] = traj->traj.velocities[k][i];
  }
  return LEDR_OK;
}

ledr_status ledr_trajectory_write_csv(const ledr_trajectory* traj, const char* path) {
  LEDR_REQUIRE(traj);
  LEDR_REQUIRE(path);
  return guard([&] { ledr::write_text_file(path, ledr::trajectory_csv(traj->traj)); });
}

ledr_status ledr_series_from_trajectories(const ledr_trajectory* true_traj, const ledr_trajectory* model_traj,
                                          ledr_series** out) {
  LEDR_REQUIRE(true_traj);
  LEDR_REQUIRE(model_traj);
  LEDR_REQUIRE(out);
  return guard([&] {
    *out = new ledr_series{ledr::to_discrete(ledr::ledr_from_trajectories(true_traj->traj, model_traj->traj))};
  });
}

ledr_status ledr_series_recurrence_constant(const double* xi0, const double* xi1, int dim, size_t steps, double h,
                                            double curvature, ledr_series** out) {
  LEDR_REQUIRE(xi0);
  LEDR_REQUIRE(xi1);
  LEDR_REQUIRE(out);
  if (dim < 1) return fail(LEDR_ERR_INVALID_ARGUMENT, "dimension must be >= 1");
  return guard([&] {
    *out = new ledr_series{ledr::run_recurrence(to_vector(xi0, dim), to_vector(xi1, dim), steps, h,
                                                ledr::ConstantCurvature{curvature})};
  });
}

ledr_status ledr_series_read_csv(const char* path, double h, ledr_series** out) {
  LEDR_REQUIRE(path);
  LEDR_REQUIRE(out);
  return guard([&] {
    const std::optional<double> step = h > 0.0 ? std::optional<double>(h) : std::nullopt;
    *out = new ledr_series{ledr::parse_ledr_csv(ledr::read_text_file(path), step)};
  });
}

ledr_status ledr_series_write_csv(const ledr_series* series, const char* path) {
  LEDR_REQUIRE(series);
  LEDR_REQUIRE(path);
  return guard([&] { ledr::write_text_file(path, ledr::ledr_csv(series->series)); });
}

void ledr_series_free(ledr_series* series) { delete series; }
size_t ledr_series_size(const ledr_series* series) { return series ? series->series.size() : 0; }
int ledr_series_dim(const ledr_series* series) { return series ? series->series.dim() : 0; }
double ledr_series_step(const ledr_series* series) { return series ? series->series.h : 0.0; }

ledr_status ledr_series_get(const ledr_series* series, size_t k, double* xi) {
  LEDR_REQUIRE(series);
  LEDR_REQUIRE(xi);
  if (k >= series->series.size()) return fail(LEDR_ERR_INVALID_ARGUMENT, "sample index out of range");
  for (int i = 0; i < series->series.dim(); ++i) xi[i] = series->series.xi[k][i];
  return LEDR_OK;
}

ledr_status ledr_classify_stability(double curvature, double h, ledr_stability* out) {
  LEDR_REQUIRE(out);
  return guard([&] {
    const ledr::StabilityReport r = ledr::classify_stability(curvature, h);
    ledr_stability s{};
    s.lambda = r.lambda;
    for (int i = 0; i < 2; ++i) {
      s.root_re[i] = r.roots[i].real();
      s.root_im[i] = r.roots[i].imag();
    }
    s.max_root_modulus = r.max_root_modulus();
    s.regime = to_c(r.regime);
    s.has_omega_d = r.omega_d.has_value();
    s.omega_d = r.omega_d.value_or(0.0);
    *out = s;
  });
}

const char* ledr_regime_string(ledr_regime regime) {
  switch (regime) {
    case LEDR_REGIME_OSCILLATORY: return ledr::to_string(ledr::Regime::oscillatory);
    case LEDR_REGIME_DEGENERATE_BOUNDARY: return ledr::to_string(ledr::Regime::degenerate_boundary);
    case LEDR_REGIME_DIVERGENT_POSITIVE: return ledr::to_string(ledr::Regime::divergent_positive);
    case LEDR_REGIME_DIVERGENT_NEGATIVE: return ledr::to_string(ledr::Regime::divergent_negative);
    case LEDR_REGIME_FLAT_DRIFT: return ledr::to_string(ledr::Regime::flat_drift);
  }
  return "unknown";
}

ledr_status ledr_discrete_frequency(double curvature, double h, double* out) {
  LEDR_REQUIRE(out);
  return guard([&] { *out = ledr::discrete_frequency(curvature, h); });
}

ledr_status ledr_estimate_curvature(const ledr_series* series, ledr_estimate_summary* summary, const char* json_path) {
  LEDR_REQUIRE(series);
  return guard([&] {
    const ledr::CurvatureEstimate est = ledr::estimate_curvature(series->series);
    if (json_path) ledr::write_text_file(json_path, ledr::curvature_estimate_json(est));
    if (summary) {
      const ledr::EstimateSummary s = ledr::summarize(est);
      *summary = {s.n_valid, s.median, s.q1, s.q3, s.iqr};
    }
  });
}

ledr_status ledr_fit_frequency(const ledr_series* series, int component, double omega_hint, ledr_frequency_fit* out) {
  LEDR_REQUIRE(series);
  LEDR_REQUIRE(out);
  return guard([&] {
    const std::optional<double> hint = omega_hint > 0.0 ? std::optional<double>(omega_hint) : std::nullopt;
    const ledr::FrequencyFit f = ledr::fit_frequency(series->series, component, hint);
    *out = {f.omega, f.amplitude, f.phase, f.residual};
  });
}

ledr_status ledr_config_load(const char* path, ledr_config** out) {
  LEDR_REQUIRE(path);
  LEDR_REQUIRE(out);
  return guard([&] { *out = new ledr_config{ledr::load_config(path)}; });
}

void ledr_config_free(ledr_config* config) { delete config; }

ledr_status ledr_config_set_h(ledr_config* config, double h) {
  LEDR_REQUIRE(config);
  if (!(h > 0.0)) return fail(LEDR_ERR_VALIDATION, "h: step size must be > 0", "h");
  config->config.h = h;
  return LEDR_OK;
}

ledr_status ledr_config_set_steps(ledr_config* config, size_t steps) {
  LEDR_REQUIRE(config);
  if (steps < 1) return fail(LEDR_ERR_VALIDATION, "steps: must be >= 1", "steps");
  config->config.steps = steps;
  return LEDR_OK;
}

ledr_status ledr_config_set_seed(ledr_config* config, uint64_t seed) {
  LEDR_REQUIRE(config);
  config->config.seed = seed;
  return LEDR_OK;
}

const char* ledr_config_out(const ledr_config* config) { return config ? config->config.out.c_str() : ""; }

ledr_status ledr_cmd_simulate(const ledr_config* config, const char* out_dir) {
  LEDR_REQUIRE(config);
  LEDR_REQUIRE(out_dir);
  return guard([&] { ledr::cmd_simulate(config->config, out_dir); });
}

ledr_status ledr_cmd_sphere_plane(double r, double h, double horizon, const char* out_dir) {
  LEDR_REQUIRE(out_dir);
  return guard([&] {
    const std::optional<double> hz = horizon > 0.0 ? std::optional<double>(horizon) : std::nullopt;
    ledr::cmd_sphere_plane(r, h, hz, out_dir);
  });
}

ledr_status ledr_cmd_stability(double k_min, double k_max, size_t k_steps, double h_min, double h_max, size_t h_steps,
                               const char* out_dir) {
  LEDR_REQUIRE(out_dir);
  return guard([&] { ledr::cmd_stability({k_min, k_max, k_steps}, {h_min, h_max, h_steps}, out_dir); });
}

ledr_status ledr_cmd_estimate_k(const char* input_csv, double h, const char* out_dir) {
  LEDR_REQUIRE(input_csv);
  LEDR_REQUIRE(out_dir);
  return guard([&] {
    const std::optional<double> step = h > 0.0 ? std::optional<double>(h) : std::nullopt;
    ledr::cmd_estimate_k(input_csv, step, out_dir);
  });
}

}  // extern "C"
