// SPDX-License-Identifier: Apache-2.0
#include "ledr/commands.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "ledr/error.hpp"

namespace ledr {

namespace {

using nlohmann::ordered_json;

ordered_json vector_json(const Vector& v) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

ordered_json world_json(const WorldDescriptor& d) {
  ordered_json j;
  switch (d.kind) {
    case WorldKind::flat:
      j["kind"] = "flat";
      j["n"] = d.dim;
      break;
    case WorldKind::sphere:
      j["kind"] = "sphere";
      j["r"] = d.radius;
      break;
    case WorldKind::constant_k:
      j["kind"] = "constant_k";
      j["k"] = d.curvature;
      break;
  }
  return j;
}

[[noreturn]] void invalid(const std::string& field, const std::string& msg) {
  throw ValidationError(ErrorKind::validation, field, 0, 0, field + ": " + msg);
}

}  // namespace

PathList cmd_simulate(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  validate_config(config);
  const WorldPreset true_world = make_world(config.world_true);
  const WorldPreset model_world = make_world(config.world_model);
  const ChartPoint x0(config.x0);
  const Vector v_true = config.dv.size() ? Vector(config.v0 + config.dv) : config.v0;

  const Trajectory tt =
      integrate_geodesic(true_world.connection, x0, TangentVector(x0, v_true), config.h, config.steps, config.scheme);
  const Trajectory mt = shadow_integrate(model_world.connection, x0, TangentVector(x0, config.v0), config.h,
                                         config.steps, config.scheme);
  const DiscreteLedrSeries series = to_discrete(ledr_from_trajectories(tt, mt));

  ordered_json recurrence;
  if (config.steps >= 2) {
    const DiscreteLedrSeries rec =
        run_recurrence(series.xi[0], series.xi[1], config.steps - 1, config.h,
                       TensorCurvature{&true_world.connection, &mt, &model_world.connection});
    double gap = 0.0;
    for (std::size_t k = 0; k < series.size(); ++k) gap = std::max(gap, (rec.xi[k] - series.xi[k]).norm());
    recurrence["samples"] = rec.size();
    recurrence["max_gap_to_difference"] = gap;
    recurrence["final_norm"] = rec.xi.back().norm();
  }

  DiagnosisSetup setup{config.x0, config.v0, config.dv, config.h, config.steps, config.scheme};
  const DiagnosisReport diagnosis = mer_diagnosis(true_world, model_world, setup);

  const PathList files{out_dir / "true_trajectory.csv", out_dir / "model_trajectory.csv", out_dir / "ledr.csv",
                       out_dir / "manifest.json"};
  write_text_file(files[0], trajectory_csv(tt));
  write_text_file(files[1], trajectory_csv(mt));
  write_text_file(files[2], ledr_csv(series));

  ordered_json m;
  m["command"] = "simulate";
  m["world_true"] = world_json(config.world_true);
  m["world_model"] = world_json(config.world_model);
  m["x0"] = vector_json(config.x0);
  m["v0"] = vector_json(config.v0);
  m["dv"] = vector_json(config.dv.size() ? config.dv : Vector::Zero(config.v0.size()));
  m["h"] = config.h;
  m["steps"] = config.steps;
  m["scheme"] = to_string(config.scheme);
  m["seed"] = config.seed;
  m["files"] = {files[0].filename().string(), files[1].filename().string(), files[2].filename().string()};
  m["recurrence"] = recurrence.is_null() ? ordered_json(nullptr) : recurrence;
  m["diagnosis"] = ordered_json::parse(to_json(diagnosis));
  write_text_file(files[3], m.dump(2) + "\n");
  return files;
}

SpherePlaneResult run_sphere_plane(double r, double h, std::optional<double> horizon) {
  if (!(r > 0.0) || !std::isfinite(r)) invalid("r", "radius must be > 0");
  if (!(h > 0.0) || !std::isfinite(h)) invalid("h", "step size must be > 0");
  const double T = horizon.value_or(4.0 * std::numbers::pi * r);
  if (!(T > 0.0) || !std::isfinite(T)) invalid("horizon", "must be > 0");
  const auto steps = static_cast<std::size_t>(std::llround(T / h));
  if (steps < 4) invalid("h", "horizon holds fewer than 4 steps");

  const SpherePlaneSetup s = sphere_plane_setup(r);
  const ChartPoint x0(s.x0);
  Vector v_true(2);
  v_true << std::cos(kSpherePlaneTilt), std::sin(kSpherePlaneTilt);
  const Trajectory tt = integrate_geodesic(s.true_world.connection, x0, TangentVector(x0, v_true), h, steps);
  const Trajectory mt = shadow_integrate(s.model_world.connection, x0, TangentVector(x0, s.v0), h, steps);

  SpherePlaneResult res;
  res.r = r;
  res.h = h;
  res.steps = steps;
  res.series = to_discrete(ledr_from_trajectories(tt, mt));
  res.fit = fit_frequency(res.series, 1);
  res.omega_expected = 1.0 / r;
  const double lambda = h * h / (r * r);
  res.omega_d = lambda < 4.0 ? discrete_frequency(1.0 / (r * r), h) : std::numeric_limits<double>::quiet_NaN();
  Vector A(2);
  A << 0.0, r * std::sin(kSpherePlaneTilt);
  const Vector B = Vector::Zero(2);
  for (std::size_t k = 0; k < res.series.size(); ++k) {
    const Vector c = sphere_plane_ledr_oracle(r, A, B, static_cast<double>(k) * h);
    res.max_closed_form_gap = std::max(res.max_closed_form_gap, (res.series.xi[k] - c).norm());
  }
  return res;
}

PathList cmd_sphere_plane(double r, double h, std::optional<double> horizon, const std::filesystem::path& out_dir) {
  const SpherePlaneResult res = run_sphere_plane(r, h, horizon);
  Vector A(2);
  A << 0.0, r * std::sin(kSpherePlaneTilt);
  const Vector B = Vector::Zero(2);

  std::string csv = "t,xi0,xi1,closed0,closed1\n";
  for (std::size_t k = 0; k < res.series.size(); ++k) {
    const double t = static_cast<double>(k) * h;
    const Vector c = sphere_plane_ledr_oracle(r, A, B, t);
    csv += format_double(t) + ',' + format_double(res.series.xi[k][0]) + ',' + format_double(res.series.xi[k][1]) +
           ',' + format_double(c[0]) + ',' + format_double(c[1]) + '\n';
  }

  ordered_json j;
  j["command"] = "sphere-plane";
  j["r"] = r;
  j["h"] = h;
  j["horizon"] = static_cast<double>(res.steps) * h;
  j["steps"] = res.steps;
  j["tilt"] = kSpherePlaneTilt;
  j["omega_fit"] = res.fit.omega;
  j["omega_expected"] = res.omega_expected;
  j["relative_error"] = std::abs(res.fit.omega * r - 1.0);
  j["omega_d"] = std::isfinite(res.omega_d) ? ordered_json(res.omega_d) : ordered_json(nullptr);
  j["amplitude"] = res.fit.amplitude;
  j["fit_residual"] = res.fit.residual;
  j["max_closed_form_gap"] = res.max_closed_form_gap;

  const PathList files{out_dir / "sphere_plane_ledr.csv", out_dir / "sphere_plane_report.json"};
  write_text_file(files[0], csv);
  write_text_file(files[1], j.dump(2) + "\n");
  return files;
}

std::vector<double> Range::values() const {
  std::vector<double> out;
  if (count == 1) return {min};
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(i + 1 == count ? max : min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1));
  return out;
}

std::vector<StabilityRow> stability_grid(const Range& k_range, const Range& h_range) {
  auto check = [](const Range& r, const std::string& name) {
    if (r.count < 1) invalid(name + "-steps", "must be >= 1");
    if (!std::isfinite(r.min) || !std::isfinite(r.max)) invalid(name + "-min", "bounds must be finite");
    if (r.min > r.max) invalid(name + "-min", "must not exceed " + name + "-max");
  };
  check(k_range, "k");
  check(h_range, "h");
  if (!(h_range.min > 0.0)) invalid("h-min", "step size must be > 0");

  std::vector<StabilityRow> rows;
  for (double K : k_range.values())
    for (double h : h_range.values()) rows.push_back({K, h, classify_stability(K, h)});
  return rows;
}

PathList cmd_stability(const Range& k_range, const Range& h_range, const std::filesystem::path& out_dir) {
  const PathList files{out_dir / "stability.csv"};
  write_text_file(files[0], stability_csv(stability_grid(k_range, h_range)));
  return files;
}

PathList cmd_estimate_k(const std::filesystem::path& input, std::optional<double> h,
                        const std::filesystem::path& out_dir) {
  const DiscreteLedrSeries series = parse_ledr_csv(read_text_file(input), h);
  if (series.size() < 3) invalid("input", "need at least 3 rows");
  const PathList files{out_dir / "curvature_estimate.json"};
  write_text_file(files[0], curvature_estimate_json(estimate_curvature(series)));
  return files;
}

}  // namespace ledr
