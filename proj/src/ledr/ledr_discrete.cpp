// SPDX-License-Identifier: Apache-2.0
#include "ledr/ledr_discrete.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <sstream>

#include "ledr/error.hpp"

namespace ledr {

const char* to_string(SeriesOrigin origin) noexcept {
  switch (origin) {
    case SeriesOrigin::recurrence: return "recurrence";
    case SeriesOrigin::measured: return "measured";
    case SeriesOrigin::trajectory_difference: return "trajectory_difference";
  }
  return "unknown";
}

const char* to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::oscillatory: return "oscillatory";
    case Regime::degenerate_boundary: return "degenerate_boundary";
    case Regime::divergent_positive: return "divergent_positive";
    case Regime::divergent_negative: return "divergent_negative";
    case Regime::flat_drift: return "flat_drift";
  }
  return "unknown";
}

std::optional<Regime> regime_from_string(const std::string& name) {
  for (Regime r : {Regime::oscillatory, Regime::degenerate_boundary, Regime::divergent_positive,
                   Regime::divergent_negative, Regime::flat_drift})
    if (name == to_string(r)) return r;
  return std::nullopt;
}

std::vector<double> DiscreteLedrSeries::component(int i) const {
  std::vector<double> out;
  out.reserve(xi.size());
  for (const auto& v : xi) out.push_back(v[i]);
  return out;
}

std::vector<double> DiscreteLedrSeries::norms() const {
  std::vector<double> out;
  out.reserve(xi.size());
  for (const auto& v : xi) out.push_back(v.norm());
  return out;
}

DiscreteLedrSeries to_discrete(const LedrSolution& solution) {
  DiscreteLedrSeries s;
  s.h = solution.h;
  s.origin = solution.source == LedrSource::trajectory_difference ? SeriesOrigin::trajectory_difference
                                                                  : SeriesOrigin::measured;
  s.xi.reserve(solution.size());
  for (const auto& st : solution.states) s.xi.push_back(st.xi);
  return s;
}

namespace {

void check_interior(const DiscreteLedrSeries& series, std::size_t k, const char* what) {
  if (k < 1 || k + 2 > series.size()) {
    std::ostringstream os;
    os << what << ": index " << k << " outside the interior of a series of length " << series.size();
    throw Error(ErrorKind::invalid_argument, os.str());
  }
}

constexpr double kOverflowGuard = 1e100;

}  // namespace

Vector discrete_first_diff(const DiscreteLedrSeries& series, std::size_t k) {
  check_interior(series, k, "discrete_first_diff");
  return (series.xi[k + 1] - series.xi[k - 1]) / (2.0 * series.h);
}

Vector discrete_second_diff(const DiscreteLedrSeries& series, std::size_t k) {
  check_interior(series, k, "discrete_second_diff");
  return (series.xi[k + 1] - 2.0 * series.xi[k] + series.xi[k - 1]) / (series.h * series.h);
}

Vector recurrence_step(const Vector& xi_k, const Vector& xi_km1, double h, const ConnectionField& true_conn,
                       const ConnectionField& model_conn, const ChartPoint& x_mk, const TangentVector& T_mk) {
  const int n = true_conn.dim();
  if (model_conn.dim() != n || xi_k.size() != n || xi_km1.size() != n || x_mk.dim() != n || T_mk.dim() != n)
    throw Error(ErrorKind::dimension_mismatch, "recurrence_step: inconsistent dimensions");
  const Vector& T = T_mk.components();
  const Vector jac = jacobi_contract(curvature_at(true_conn, x_mk).components(), T, xi_k);
  const Vector forcing = forcing_term(connection_mismatch(true_conn, model_conn, x_mk), T_mk).components();
  return 2.0 * xi_k - xi_km1 - (h * h) * jac + (h * h) * forcing;
}

DiscreteLedrSeries run_recurrence(const Vector& xi0, const Vector& xi1, std::size_t steps, double h,
                                  const CurvatureSource& source) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::invalid_argument, "step size h must be > 0");
  if (steps < 1) throw Error(ErrorKind::invalid_argument, "steps must be >= 1");
  if (xi0.size() != xi1.size()) throw Error(ErrorKind::dimension_mismatch, "xi0 and xi1 differ in dimension");

  if (const auto* pw = std::get_if<PiecewiseCurvature>(&source); pw && pw->k.size() < steps + 1)
    throw Error(ErrorKind::invalid_argument, "piecewise curvature needs steps + 1 entries");
  if (const auto* tc = std::get_if<TensorCurvature>(&source)) {
    if (!tc->true_conn || !tc->model_traj) throw Error(ErrorKind::invalid_argument, "tensor curvature source incomplete");
    if (tc->model_traj->size() < steps + 1)
      throw Error(ErrorKind::invalid_argument, "model trajectory shorter than the requested recurrence");
    if (tc->true_conn->dim() != xi0.size())
      throw Error(ErrorKind::dimension_mismatch, "curvature source dimension differs from xi");
  }

  DiscreteLedrSeries out;
  out.h = h;
  out.origin = SeriesOrigin::recurrence;
  out.xi.reserve(steps + 2);
  out.xi.push_back(xi0);
  out.xi.push_back(xi1);

  const double h2 = h * h;
  for (std::size_t j = 1; j <= steps; ++j) {
    const Vector& cur = out.xi[j];
    const Vector& prev = out.xi[j - 1];
    Vector next;
    if (const auto* c = std::get_if<ConstantCurvature>(&source)) {
      next = 2.0 * cur - prev - (h2 * c->k) * cur;
    } else if (const auto* pw = std::get_if<PiecewiseCurvature>(&source)) {
      next = 2.0 * cur - prev - (h2 * pw->k[j]) * cur;
    } else {
      const auto& tc = std::get<TensorCurvature>(source);
      const Trajectory& traj = *tc.model_traj;
      const TangentVector T = j + 1 < traj.size() ? discrete_velocity(traj, j) : traj.velocity(j);
      if (tc.model_conn) {
        next = recurrence_step(cur, prev, h, *tc.true_conn, *tc.model_conn, T.base(), T);
      } else {
        const Vector jac = jacobi_contract(curvature_at(*tc.true_conn, T.base()).components(), T.components(), cur);
        next = 2.0 * cur - prev - h2 * jac;
      }
    }
    const double norm = next.norm();
    if (!std::isfinite(norm) || norm > kOverflowGuard) {
      std::ostringstream os;
      os << "recurrence diverged at step " << j + 1 << " (|xi| = " << norm << ")";
      throw DivergenceError(j + 1, norm, os.str());
    }
    out.xi.push_back(std::move(next));
  }
  return out;
}

RootPair characteristic_roots(double lambda) {
  const double b = 1.0 - lambda / 2.0;
  const double disc = lambda * (lambda / 4.0 - 1.0);  // λ²/4 − λ
  if (disc < 0.0) {
    const double s = std::sqrt(-disc);
    return {std::complex<double>(b, s), std::complex<double>(b, -s)};
  }
  const double s = std::sqrt(disc);
  if (b >= 0.0) {
    const double big = b + s;
    return {std::complex<double>(big, 0.0), std::complex<double>(1.0 / big, 0.0)};
  }
  const double big = b - s;
  return {std::complex<double>(1.0 / big, 0.0), std::complex<double>(big, 0.0)};
}

StabilityReport classify_stability(double K, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::invalid_argument, "step size h must be > 0");
  if (!std::isfinite(K)) throw Error(ErrorKind::invalid_argument, "curvature must be finite");
  StabilityReport r;
  r.lambda = h * h * K;
  r.roots = characteristic_roots(r.lambda);
  if (K == 0.0) {
    r.regime = Regime::flat_drift;
  } else if (K < 0.0) {
    r.regime = Regime::divergent_negative;
  } else if (r.lambda == 0.0 || std::abs(r.lambda - 4.0) < 1e-12) {
    r.regime = Regime::degenerate_boundary;
  } else if (r.lambda < 4.0) {
    r.regime = Regime::oscillatory;
    r.omega_d = discrete_frequency(K, h);
  } else {
    r.regime = Regime::divergent_positive;
  }
  return r;
}

double discrete_frequency(double K, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::invalid_argument, "step size h must be > 0");
  const double lambda = h * h * K;
  if (!(lambda > 0.0 && lambda < 4.0)) {
    std::ostringstream os;
    os << "h^2 K = " << lambda << " is outside the oscillatory window (0, 4)";
    throw Error(ErrorKind::invalid_argument, os.str());
  }
  // arccos(1 − λ/2) written as 2 asin(√λ / 2) to keep precision for small λ.
  return 2.0 * std::asin(std::sqrt(lambda) / 2.0) / h;
}

CurvatureEstimate estimate_curvature(const DiscreteLedrSeries& series, double tol) {
  if (series.size() < 3) throw Error(ErrorKind::invalid_argument, "curvature estimation needs >= 3 samples");
  const std::size_t n = series.size();
  CurvatureEstimate est;
  est.h = series.h;
  est.k_values.assign(n, std::numeric_limits<double>::quiet_NaN());
  est.valid.assign(n, false);
  double max_norm = 0.0;
  for (const auto& v : series.xi) max_norm = std::max(max_norm, v.norm());
  if (max_norm == 0.0) return est;
  const double h2 = series.h * series.h;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const Vector& x = series.xi[k];
    const double nrm = x.norm();
    if (nrm < tol * max_norm || nrm == 0.0) continue;
    const Vector num = 2.0 * x - series.xi[k + 1] - series.xi[k - 1];
    est.k_values[k] = num.dot(x) / (h2 * nrm * nrm);
    est.valid[k] = std::isfinite(est.k_values[k]);
  }
  return est;
}

namespace {

double quantile_sorted(const std::vector<double>& v, double p) {
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

EstimateSummary summarize(const CurvatureEstimate& estimate) {
  std::vector<double> vals;
  for (std::size_t k = 0; k < estimate.k_values.size(); ++k)
    if (estimate.valid[k]) vals.push_back(estimate.k_values[k]);
  EstimateSummary s;
  s.n_valid = vals.size();
  if (vals.empty()) {
    s.median = s.q1 = s.q3 = s.iqr = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  std::sort(vals.begin(), vals.end());
  s.median = quantile_sorted(vals, 0.5);
  s.q1 = quantile_sorted(vals, 0.25);
  s.q3 = quantile_sorted(vals, 0.75);
  s.iqr = s.q3 - s.q1;
  return s;
}

MismatchProbeReport mismatch_lower_bound_probe(const DiscreteLedrSeries& series, const std::vector<double>& k_true,
                                               const std::vector<double>& k_model, const ProbeOptions& options) {
  const std::size_t n = series.size();
  if (k_true.size() != n || k_model.size() != n) {
    std::ostringstream os;
    os << "probe inputs differ in length (series " << n << ", k_true " << k_true.size() << ", k_model "
       << k_model.size() << ")";
    throw Error(ErrorKind::invalid_argument, os.str());
  }
  if (n < 2) throw Error(ErrorKind::invalid_argument, "probe needs at least 2 samples");

  MismatchProbeReport r;
  r.norms = series.norms();
  r.mismatch_integral.assign(n, 0.0);
  double min_mismatch = std::numeric_limits<double>::infinity();
  double mean_true = 0.0, mean_mismatch = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dk = std::abs(k_true[k] - k_model[k]);
    min_mismatch = std::min(min_mismatch, dk);
    mean_true += k_true[k] / static_cast<double>(n);
    mean_mismatch += dk / static_cast<double>(n);
    if (k + 1 < n) r.mismatch_integral[k + 1] = r.mismatch_integral[k] + series.h * dk;
  }
  if (options.kappa0 > 0.0 && min_mismatch < options.kappa0 * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "declared persistent mismatch " << options.kappa0 << " exceeds observed minimum " << min_mismatch;
    throw Error(ErrorKind::invalid_argument, os.str());
  }

  if (options.window) {
    r.window = *options.window;
  } else {
    std::optional<double> omega;
    for (double kref : {mean_true, mean_mismatch}) {
      const double lambda = series.h * series.h * kref;
      if (lambda > 0.0 && lambda < 4.0) {
        omega = discrete_frequency(kref, series.h);
        break;
      }
    }
    r.window = omega ? static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi / (*omega * series.h)))
                     : std::max<std::size_t>(2, n / 10);
  }
  r.window = std::clamp<std::size_t>(r.window, 1, n);

  r.early_amplitude = *std::max_element(r.norms.begin(), r.norms.begin() + static_cast<std::ptrdiff_t>(r.window));

  // Sliding-window maximum, then its minimum over all window positions.
  std::deque<std::size_t> dq;
  r.min_window_sup = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    while (!dq.empty() && r.norms[dq.back()] <= r.norms[k]) dq.pop_back();
    dq.push_back(k);
    if (dq.front() + r.window <= k) dq.pop_front();
    if (k + 1 >= r.window) r.min_window_sup = std::min(r.min_window_sup, r.norms[dq.front()]);
  }

  const double max_norm = *std::max_element(r.norms.begin(), r.norms.end());
  const double eps_hat = series.h * series.h * max_norm;
  for (std::size_t k = n / 2; k < n; ++k) {
    if (r.mismatch_integral[k] <= 0.0) continue;
    const double c = (r.norms[k] + eps_hat) / r.mismatch_integral[k];
    r.c_hat = r.c_hat ? std::min(*r.c_hat, c) : c;
  }

  const bool claim = options.kappa0 > 0.0 && r.mismatch_integral.back() > 0.0;
  if (claim) {
    r.non_decay = r.early_amplitude > 0.0 && r.min_window_sup >= options.delta * r.early_amplitude;
    r.obstruction_violated = !*r.non_decay;
  }
  return r;
}

}  // namespace ledr
