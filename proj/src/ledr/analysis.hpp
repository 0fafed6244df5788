// SPDX-License-Identifier: Apache-2.0
//
// Post-processing of LEDR series: frequency fits, convergence orders, growth
// rates and an end-to-end diagnosis report.
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ledr/ledr_discrete.hpp"
#include "ledr/worlds.hpp"

namespace ledr {

// y(t) ≈ amplitude · sin(omega t + phase) = a sin(ωt) + b cos(ωt)
struct FrequencyFit {
  double omega = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
  double residual = 0.0;  // RMS(residual) / RMS(y)
  std::size_t zero_crossings = 0;
};

// Samples y_k at t_k = k·h. Without a hint the initial frequency comes from
// zero crossings (at least 3, separated by >= 2 samples); the fit itself is
// Levenberg–Marquardt on (a, b, ω).
FrequencyFit fit_frequency(const std::vector<double>& y, double h, std::optional<double> omega_hint = std::nullopt);
FrequencyFit fit_frequency(const DiscreteLedrSeries& series, int component,
                           std::optional<double> omega_hint = std::nullopt);
FrequencyFit fit_frequency(const LedrSolution& solution, int component,
                           std::optional<double> omega_hint = std::nullopt);

// Index of the component with the largest RMS.
int dominant_component(const DiscreteLedrSeries& series);

struct ConvergenceReport {
  std::vector<double> steps;
  std::vector<double> errors;
  double slope = 0.0;
};

using ConvergenceRunner = std::function<double(double h)>;

// `runner(h)` returns the max-norm error against an oracle. h_list needs at
// least three entries, each half of the previous one.
ConvergenceReport convergence_order(const ConvergenceRunner& runner, const std::vector<double>& h_list);

// Least-squares slope of log(errors) against log(steps).
double loglog_slope(const std::vector<double>& steps, const std::vector<double>& errors);

// Exponential rate per unit time from a log-linear fit of |values| over the
// trailing `fraction` of the series.
double growth_rate(const std::vector<double>& values, double h, double fraction = 0.5);

struct DiagnosisSetup {
  Vector x0;
  Vector v0;
  Vector dv;  // added to v0 for the true flow; zero when empty
  double h = 0.01;
  std::size_t steps = 1000;
  Scheme scheme = Scheme::rk4;
};

struct DiagnosisReport {
  std::string true_world;
  std::string model_world;
  double h = 0.0;
  std::size_t steps = 0;
  bool mismatch_detected = false;
  double max_ledr_norm = 0.0;
  std::optional<EstimateSummary> k_hat;
  std::optional<Regime> regime;
  std::optional<FrequencyFit> fit;
  int fit_component = -1;
  std::optional<double> sqrt_k_hat;
  std::optional<double> omega_d;
  std::optional<double> growth;
  double kappa0 = 0.0;
  std::optional<bool> non_decay;
  std::optional<double> min_window_sup;
  std::optional<double> early_amplitude;
};

DiagnosisReport mer_diagnosis(const WorldPreset& true_world, const WorldPreset& model_world,
                              const DiagnosisSetup& setup);

// Deterministic pretty-printed JSON.
std::string to_json(const DiagnosisReport& report);

// Sectional curvature of the plane spanned by T and the coordinate axis least
// aligned with it; 0 on flat worlds.
double curvature_along(const WorldPreset& world, const ChartPoint& x, const Vector& T);

}  // namespace ledr
