// SPDX-License-Identifier: Apache-2.0
#include "ledr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

#include "ledr/error.hpp"

namespace ledr {

namespace {

struct Crossings {
  std::vector<double> times;
};

Crossings zero_crossings(const std::vector<double>& y, double h) {
  Crossings c;
  std::ptrdiff_t last_idx = -1;  // last sample with a nonzero sign
  std::ptrdiff_t last_cross = -1;
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (y[k] == 0.0) continue;
    const auto kk = static_cast<std::ptrdiff_t>(k);
    if (last_idx >= 0 && (y[k] > 0.0) != (y[static_cast<std::size_t>(last_idx)] > 0.0)) {
      if (last_cross < 0 || kk - last_cross >= 2) {
        const double y0 = y[static_cast<std::size_t>(last_idx)];
        const double frac = y0 / (y0 - y[k]);
        c.times.push_back(h * (static_cast<double>(last_idx) + frac * static_cast<double>(kk - last_idx)));
        last_cross = kk;
      }
    }
    last_idx = kk;
  }
  return c;
}

double rms(const std::vector<double>& y) {
  double s = 0.0;
  for (double v : y) s += v * v;
  return std::sqrt(s / static_cast<double>(y.size()));
}

// Linear least squares for (a, b) at fixed ω.
Eigen::Vector2d linear_coeffs(const std::vector<double>& y, double h, double omega) {
  Eigen::Matrix2d A = Eigen::Matrix2d::Zero();
  Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double t = static_cast<double>(k) * h;
    const double s = std::sin(omega * t), c = std::cos(omega * t);
    A(0, 0) += s * s;
    A(0, 1) += s * c;
    A(1, 1) += c * c;
    rhs[0] += s * y[k];
    rhs[1] += c * y[k];
  }
  A(1, 0) = A(0, 1);
  return A.ldlt().solve(rhs);
}

double sum_sq(const std::vector<double>& y, double h, const Eigen::Vector3d& p) {
  double s = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double t = static_cast<double>(k) * h;
    const double r = y[k] - p[0] * std::sin(p[2] * t) - p[1] * std::cos(p[2] * t);
    s += r * r;
  }
  return s;
}

}  // namespace

FrequencyFit fit_frequency(const std::vector<double>& y, double h, std::optional<double> omega_hint) {
  if (!(h > 0.0)) throw Error(ErrorKind::invalid_argument, "step size h must be > 0");
  if (y.size() < 4) throw Error(ErrorKind::invalid_argument, "frequency fit needs at least 4 samples");
  for (double v : y)
    if (!std::isfinite(v)) throw Error(ErrorKind::non_finite, "frequency fit input contains non-finite values");

  const Crossings cr = zero_crossings(y, h);
  double omega0 = 0.0;
  if (omega_hint) {
    if (!(*omega_hint > 0.0)) throw Error(ErrorKind::invalid_argument, "frequency hint must be > 0");
    omega0 = *omega_hint;
  } else {
    if (cr.times.size() < 3) {
      std::ostringstream os;
      os << "no oscillation: " << cr.times.size() << " zero crossings found, need at least 3";
      throw Error(ErrorKind::no_oscillation, os.str());
    }
    omega0 = std::numbers::pi * static_cast<double>(cr.times.size() - 1) / (cr.times.back() - cr.times.front());
  }

  const Eigen::Vector2d ab = linear_coeffs(y, h, omega0);
  Eigen::Vector3d p(ab[0], ab[1], omega0);
  double cost = sum_sq(y, h, p);
  double mu = 1e-3;
  for (int iter = 0; iter < 200 && cost > 0.0; ++iter) {
    Eigen::Matrix3d JtJ = Eigen::Matrix3d::Zero();
    Eigen::Vector3d Jtr = Eigen::Vector3d::Zero();
    for (std::size_t k = 0; k < y.size(); ++k) {
      const double t = static_cast<double>(k) * h;
      const double s = std::sin(p[2] * t), c = std::cos(p[2] * t);
      const Eigen::Vector3d j(s, c, t * (p[0] * c - p[1] * s));
      const double r = y[k] - p[0] * s - p[1] * c;
      JtJ += j * j.transpose();
      Jtr += j * r;
    }
    bool accepted = false;
    for (int tries = 0; tries < 30; ++tries) {
      Eigen::Matrix3d M = JtJ;
      for (int d = 0; d < 3; ++d) M(d, d) += mu * JtJ(d, d);
      const Eigen::Vector3d step = M.ldlt().solve(Jtr);
      const Eigen::Vector3d trial = p + step;
      const double trial_cost = sum_sq(y, h, trial);
      if (std::isfinite(trial_cost) && trial_cost <= cost) {
        const bool converged = std::abs(step[2]) <= 1e-15 * std::max(1.0, std::abs(p[2])) ||
                               cost - trial_cost <= 1e-30 * std::max(1.0, cost);
        p = trial;
        cost = trial_cost;
        mu = std::max(mu / 3.0, 1e-12);
        accepted = !converged;
        break;
      }
      mu *= 4.0;
    }
    if (!accepted) break;
  }

  if (p[2] < 0.0) {
    p[2] = -p[2];
    p[0] = -p[0];
  }
  FrequencyFit fit;
  fit.omega = p[2];
  fit.amplitude = std::hypot(p[0], p[1]);
  fit.phase = std::atan2(p[1], p[0]);
  const double scale = rms(y);
  fit.residual = scale > 0.0 ? std::sqrt(cost / static_cast<double>(y.size())) / scale : 0.0;
  fit.zero_crossings = cr.times.size();
  return fit;
}

FrequencyFit fit_frequency(const DiscreteLedrSeries& series, int component, std::optional<double> omega_hint) {
  if (component < 0 || component >= series.dim())
    throw Error(ErrorKind::invalid_argument, "component index out of range");
  return fit_frequency(series.component(component), series.h, omega_hint);
}

FrequencyFit fit_frequency(const LedrSolution& solution, int component, std::optional<double> omega_hint) {
  if (component < 0 || component >= solution.dim())
    throw Error(ErrorKind::invalid_argument, "component index out of range");
  return fit_frequency(solution.component(component), solution.h, omega_hint);
}

int dominant_component(const DiscreteLedrSeries& series) {
  int best = 0;
  double best_rms = -1.0;
  for (int i = 0; i < series.dim(); ++i) {
    const double r = rms(series.component(i));
    if (r > best_rms) {
      best_rms = r;
      best = i;
    }
  }
  return best;
}

double loglog_slope(const std::vector<double>& steps, const std::vector<double>& errors) {
  if (steps.size() != errors.size() || steps.size() < 2)
    throw Error(ErrorKind::invalid_argument, "slope fit needs matching lists of >= 2 entries");
  const auto n = static_cast<double>(steps.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i] > 0.0) || !(errors[i] > 0.0))
      throw Error(ErrorKind::invalid_argument, "log-log fit needs positive steps and errors");
    const double x = std::log(steps[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceReport convergence_order(const ConvergenceRunner& runner, const std::vector<double>& h_list) {
  if (h_list.size() < 3) throw Error(ErrorKind::invalid_argument, "convergence study needs at least 3 step sizes");
  for (std::size_t i = 0; i < h_list.size(); ++i) {
    if (!(h_list[i] > 0.0)) throw Error(ErrorKind::invalid_argument, "step sizes must be > 0");
    if (i > 0 && std::abs(h_list[i] * 2.0 - h_list[i - 1]) > 1e-12 * h_list[i - 1])
      throw Error(ErrorKind::invalid_argument, "each step size must halve the previous one");
  }
  ConvergenceReport rep;
  rep.steps = h_list;
  for (double h : h_list) {
    const double e = runner(h);
    if (!(e > 0.0) || !std::isfinite(e)) {
      std::ostringstream os;
      os << "runner returned non-positive error " << e << " at h = " << h;
      throw Error(ErrorKind::invalid_argument, os.str());
    }
    rep.errors.push_back(e);
  }
  rep.slope = loglog_slope(rep.steps, rep.errors);
  return rep;
}

double growth_rate(const std::vector<double>& values, double h, double fraction) {
  if (!(h > 0.0)) throw Error(ErrorKind::invalid_argument, "step size h must be > 0");
  if (!(fraction > 0.0 && fraction <= 1.0)) throw Error(ErrorKind::invalid_argument, "fraction must be in (0, 1]");
  const std::size_t n = values.size();
  const auto count = static_cast<std::size_t>(std::floor(static_cast<double>(n) * fraction));
  if (count < 2) throw Error(ErrorKind::invalid_argument, "growth-rate fit needs at least 2 samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = n - count; k < n; ++k) {
    const double a = std::abs(values[k]);
    if (!(a > 0.0) || !std::isfinite(a))
      throw Error(ErrorKind::invalid_argument, "growth-rate fit needs nonzero finite samples");
    const double x = static_cast<double>(k) * h, y = std::log(a);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const auto m = static_cast<double>(count);
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double curvature_along(const WorldPreset& world, const ChartPoint& x, const Vector& T) {
  if (world.connection.is_flat()) return 0.0;
  const int n = world.dim();
  int axis = 0;
  double best = std::numeric_limits<double>::infinity();
  const double tn = T.norm();
  for (int i = 0; i < n; ++i) {
    const double align = tn > 0.0 ? std::abs(T[i]) / tn : 0.0;
    if (align < best) {
      best = align;
      axis = i;
    }
  }
  const Vector e = Vector::Unit(n, axis);
  return sectional_curvature(world.metric, curvature_at(world.connection, x), TangentVector(x, T),
                             TangentVector(x, e));
}

DiagnosisReport mer_diagnosis(const WorldPreset& true_world, const WorldPreset& model_world,
                              const DiagnosisSetup& setup) {
  const int n = true_world.dim();
  if (model_world.dim() != n) throw Error(ErrorKind::dimension_mismatch, "worlds differ in dimension");
  if (setup.x0.size() != n || setup.v0.size() != n || (setup.dv.size() != 0 && setup.dv.size() != n))
    throw Error(ErrorKind::dimension_mismatch, "initial data dimension differs from world dimension");

  DiagnosisReport rep;
  rep.true_world = true_world.descriptor.describe();
  rep.model_world = model_world.descriptor.describe();
  rep.h = setup.h;
  rep.steps = setup.steps;

  const ChartPoint x0(setup.x0);
  const Vector v_true = setup.dv.size() == n ? Vector(setup.v0 + setup.dv) : setup.v0;
  const Trajectory tt =
      integrate_geodesic(true_world.connection, x0, TangentVector(x0, v_true), setup.h, setup.steps, setup.scheme);
  const Trajectory mt = shadow_integrate(model_world.connection, x0, TangentVector(x0, setup.v0), setup.h,
                                         setup.steps, setup.scheme);
  const DiscreteLedrSeries series = to_discrete(ledr_from_trajectories(tt, mt));
  const std::vector<double> norms = series.norms();
  rep.max_ledr_norm = *std::max_element(norms.begin(), norms.end());
  rep.mismatch_detected = rep.max_ledr_norm > 0.0;
  if (!rep.mismatch_detected) return rep;

  const EstimateSummary summary = summarize(estimate_curvature(series));
  if (summary.n_valid > 0) {
    rep.k_hat = summary;
    const StabilityReport stab = classify_stability(summary.median, setup.h);
    rep.regime = stab.regime;
    if (summary.median > 0.0) rep.sqrt_k_hat = std::sqrt(summary.median);
    rep.omega_d = stab.omega_d;
  }

  rep.fit_component = dominant_component(series);
  try {
    rep.fit = fit_frequency(series, rep.fit_component);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::no_oscillation) throw;
  }
  if (rep.regime == Regime::divergent_negative || rep.regime == Regime::divergent_positive) {
    try {
      rep.growth = growth_rate(norms, setup.h);
    } catch (const Error&) {
    }
  }

  std::vector<double> k_true(series.size()), k_model(series.size());
  bool curvature_ok = true;
  for (std::size_t k = 0; k < mt.size() && curvature_ok; ++k) {
    try {
      k_true[k] = curvature_along(true_world, mt.point(k), mt.velocities[k]);
      k_model[k] = curvature_along(model_world, mt.point(k), mt.velocities[k]);
    } catch (const Error&) {
      curvature_ok = false;
    }
  }
  if (curvature_ok) {
    double kappa0 = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < k_true.size(); ++k) kappa0 = std::min(kappa0, std::abs(k_true[k] - k_model[k]));
    rep.kappa0 = kappa0;
    ProbeOptions opts;
    opts.kappa0 = kappa0;
    const MismatchProbeReport probe = mismatch_lower_bound_probe(series, k_true, k_model, opts);
    rep.non_decay = probe.non_decay;
    rep.min_window_sup = probe.min_window_sup;
    rep.early_amplitude = probe.early_amplitude;
  }
  return rep;
}

std::string to_json(const DiagnosisReport& r) {
  using nlohmann::ordered_json;
  auto opt = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  ordered_json j;
  j["true_world"] = r.true_world;
  j["model_world"] = r.model_world;
  j["h"] = r.h;
  j["steps"] = r.steps;
  j["mismatch_detected"] = r.mismatch_detected;
  j["max_ledr_norm"] = r.max_ledr_norm;
  if (!r.mismatch_detected) j["note"] = "no mismatch detected";
  if (r.k_hat) {
    j["k_hat"] = {{"median", r.k_hat->median}, {"q1", r.k_hat->q1}, {"q3", r.k_hat->q3},
                  {"iqr", r.k_hat->iqr}, {"n_valid", r.k_hat->n_valid}};
  } else {
    j["k_hat"] = nullptr;
  }
  j["regime"] = r.regime ? ordered_json(to_string(*r.regime)) : ordered_json(nullptr);
  if (r.fit) {
    j["frequency_fit"] = {{"component", r.fit_component},  {"omega", r.fit->omega},
                          {"amplitude", r.fit->amplitude}, {"phase", r.fit->phase},
                          {"residual", r.fit->residual}};
  } else {
    j["frequency_fit"] = nullptr;
  }
  j["sqrt_k_hat"] = opt(r.sqrt_k_hat);
  j["omega_d"] = opt(r.omega_d);
  j["growth_rate"] = opt(r.growth);
  j["kappa0"] = r.kappa0;
  j["non_decay"] = r.non_decay ? ordered_json(*r.non_decay) : ordered_json(nullptr);
  j["min_window_sup"] = opt(r.min_window_sup);
  j["early_amplitude"] = opt(r.early_amplitude);
  return j.dump(2) + "\n";
}

}  // namespace ledr
