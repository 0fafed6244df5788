// SPDX-License-Identifier: Apache-2.0
#include "ledr/ledr_continuous.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ledr/error.hpp"

namespace ledr {

const char* to_string(LedrSource source) noexcept {
  switch (source) {
    case LedrSource::ode_integrated: return "ode_integrated";
    case LedrSource::trajectory_difference: return "trajectory_difference";
    case LedrSource::closed_form: return "closed_form";
  }
  return "unknown";
}

std::vector<double> LedrSolution::component(int i) const {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s.xi[i]);
  return out;
}

namespace {

void require_same_dim(int n, const Vector& v, const char* what) {
  if (v.size() != n) {
    std::ostringstream os;
    os << what << ": expected dimension " << n << ", got " << v.size();
    throw Error(ErrorKind::dimension_mismatch, os.str());
  }
}

// Everything the two right-hand sides share at one point of the model curve.
struct DeviationTerms {
  Vector correction;  // C(ξ, ξ̇)
  Vector forcing;     // F_ΔΓ(T)
  Tensor4 true_curvature;
};

DeviationTerms deviation_terms(const ConnectionField& true_conn, const ConnectionField& model_conn,
                               const ChartPoint& x, const TangentVector& T, const Vector& xi,
                               const Vector& xi_dot) {
  const int n = true_conn.dim();
  if (model_conn.dim() != n) throw Error(ErrorKind::dimension_mismatch, "connections differ in dimension");
  require_same_dim(n, x.coords(), "model point");
  require_same_dim(n, T.components(), "model velocity");
  require_same_dim(n, xi, "xi");
  require_same_dim(n, xi_dot, "xi_dot");
  if (!true_conn.contains(x.coords()))
    throw ChartExitError(0, "model point outside the chart band of '" + true_conn.tag() + "'");

  const Vector& Tv = T.components();
  const Tensor3 gamma_t = true_conn.christoffel(x);
  const Tensor3 gamma_m = model_conn.christoffel(x);
  const Tensor4 dgamma_t = true_conn.christoffel_partials(x);
  const Vector T_dot = -gamma_m.contract(Tv, Tv);

  DeviationTerms terms;
  terms.correction = covariant_correction(gamma_t, dgamma_t, Tv, T_dot, xi, xi_dot);
  terms.forcing = -(gamma_t - gamma_m).contract(Tv, Tv);
  terms.true_curvature = riemann_from(gamma_t, dgamma_t);
  return terms;
}

// Cubic Lagrange interpolation of trajectory samples at fractional index s.
struct ModelState {
  Vector x;
  Vector T;
};

ModelState interpolate(const Trajectory& traj, double s) {
  const std::size_t n = traj.size();
  const std::size_t nodes = std::min<std::size_t>(4, n);
  const auto k = static_cast<std::ptrdiff_t>(std::floor(s));
  std::ptrdiff_t first = k - 1;
  first = std::clamp<std::ptrdiff_t>(first, 0, static_cast<std::ptrdiff_t>(n - nodes));
  ModelState out{Vector::Zero(traj.dim()), Vector::Zero(traj.dim())};
  for (std::size_t a = 0; a < nodes; ++a) {
    const double xa = static_cast<double>(first) + static_cast<double>(a);
    double w = 1.0;
    for (std::size_t b = 0; b < nodes; ++b) {
      if (b == a) continue;
      const double xb = static_cast<double>(first) + static_cast<double>(b);
      w *= (s - xb) / (xa - xb);
    }
    out.x += w * traj.points[static_cast<std::size_t>(first) + a];
    out.T += w * traj.velocities[static_cast<std::size_t>(first) + a];
  }
  return out;
}

}  // namespace

Vector covariant_correction(const Tensor3& gamma, const Tensor4& dgamma, const Vector& T, const Vector& T_dot,
                            const Vector& xi, const Vector& xi_dot) {
  const int n = gamma.dim();
  Vector c = gamma.contract(T_dot, xi) + 2.0 * gamma.contract(T, xi_dot) + gamma.contract(T, gamma.contract(T, xi));
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) c[i] += dgamma(l, i, j, k) * T[l] * T[j] * xi[k];
  return c;
}

Vector ledr_rhs(const ConnectionField& true_conn, const ConnectionField& model_conn, const ChartPoint& x,
                const TangentVector& T, const Vector& xi, const Vector& xi_dot) {
  const DeviationTerms terms = deviation_terms(true_conn, model_conn, x, T, xi, xi_dot);
  return -terms.correction - jacobi_contract(terms.true_curvature, T.components(), xi) + terms.forcing;
}

Vector general_deviation_rhs(const ConnectionField& true_conn, const ConnectionField& model_conn,
                             const ChartPoint& x, const TangentVector& T, const Vector& xi,
                             const Vector& xi_dot) {
  const DeviationTerms terms = deviation_terms(true_conn, model_conn, x, T, xi, xi_dot);
  const Tensor4 model_curvature = curvature_at(model_conn, x).components();
  const Tensor4 delta_r = terms.true_curvature - model_curvature;
  const Vector& Tv = T.components();
  return -terms.correction - jacobi_contract(model_curvature, Tv, xi) - jacobi_contract(delta_r, Tv, xi) +
         terms.forcing;
}

LedrSolution integrate_ledr(const ConnectionField& true_conn, const ConnectionField& model_conn,
                            const Trajectory& model_traj, const Vector& xi0, const Vector& xi_dot0) {
  if (model_traj.size() < 2) throw Error(ErrorKind::invalid_argument, "model trajectory needs >= 2 samples");
  const int n = true_conn.dim();
  require_same_dim(n, model_traj.points.front(), "model trajectory");
  require_same_dim(n, xi0, "xi0");
  require_same_dim(n, xi_dot0, "xi_dot0");
  const double h = model_traj.h;

  auto rhs = [&](const ModelState& m, const Vector& xi, const Vector& xi_dot, std::size_t step) {
    const ChartPoint x(m.x);
    try {
      return ledr_rhs(true_conn, model_conn, x, TangentVector(x, m.T), xi, xi_dot);
    } catch (const ChartExitError&) {
      std::ostringstream os;
      os << "model trajectory left the chart band of '" << true_conn.tag() << "' at step " << step;
      throw ChartExitError(step, os.str());
    }
  };

  LedrSolution sol;
  sol.h = h;
  sol.source = LedrSource::ode_integrated;
  sol.states.reserve(model_traj.size());
  sol.states.push_back({0.0, xi0, xi_dot0});

  Vector xi = xi0;
  Vector xd = xi_dot0;
  for (std::size_t k = 0; k + 1 < model_traj.size(); ++k) {
    const ModelState m0{model_traj.points[k], model_traj.velocities[k]};
    const ModelState mh = interpolate(model_traj, static_cast<double>(k) + 0.5);
    const ModelState m1{model_traj.points[k + 1], model_traj.velocities[k + 1]};

    const Vector a1 = rhs(m0, xi, xd, k);
    const Vector xi2 = xi + 0.5 * h * xd, xd2 = xd + 0.5 * h * a1;
    const Vector a2 = rhs(mh, xi2, xd2, k);
    const Vector xi3 = xi + 0.5 * h * xd2, xd3 = xd + 0.5 * h * a2;
    const Vector a3 = rhs(mh, xi3, xd3, k);
    const Vector xi4 = xi + h * xd3, xd4 = xd + h * a3;
    const Vector a4 = rhs(m1, xi4, xd4, k);
    xi += (h / 6.0) * (xd + 2.0 * xd2 + 2.0 * xd3 + xd4);
    xd += (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    if (!xi.allFinite() || !xd.allFinite()) {
      std::ostringstream os;
      os << "non-finite LEDR state at step " << k + 1;
      throw Error(ErrorKind::non_finite, os.str());
    }
    sol.states.push_back({static_cast<double>(k + 1) * h, xi, xd});
  }
  return sol;
}

LedrSolution ledr_from_trajectories(const Trajectory& true_traj, const Trajectory& model_traj) {
  if (true_traj.h != model_traj.h || true_traj.size() != model_traj.size() || true_traj.dim() != model_traj.dim()) {
    std::ostringstream os;
    os << "trajectory grids differ (h " << true_traj.h << " vs " << model_traj.h << ", length " << true_traj.size()
       << " vs " << model_traj.size() << ")";
    throw Error(ErrorKind::invalid_argument, os.str());
  }
  LedrSolution sol;
  sol.h = true_traj.h;
  sol.source = LedrSource::trajectory_difference;
  sol.states.reserve(true_traj.size());
  for (std::size_t k = 0; k < true_traj.size(); ++k)
    sol.states.push_back({static_cast<double>(k) * sol.h, true_traj.points[k] - model_traj.points[k],
                          true_traj.velocities[k] - model_traj.velocities[k]});
  return sol;
}

Vector scalar_jacobi_closed_form(double K, const Vector& A, const Vector& B, double t) {
  if (A.size() != B.size()) throw Error(ErrorKind::dimension_mismatch, "A and B differ in dimension");
  if (K > 0.0) {
    const double w = std::sqrt(K);
    return A * std::sin(w * t) + B * std::cos(w * t);
  }
  if (K == 0.0) return B + A * t;
  const double g = std::sqrt(-K);
  return A * std::sinh(g * t) + B * std::cosh(g * t);
}

LedrSolution scalar_jacobi_solution(double K, const Vector& xi0, const Vector& xi_dot0, double h,
                                    std::size_t steps) {
  if (xi0.size() != xi_dot0.size()) throw Error(ErrorKind::dimension_mismatch, "xi0 and xi_dot0 differ");
  if (!(h > 0.0)) throw Error(ErrorKind::invalid_argument, "step size h must be > 0");
  const double w = std::sqrt(std::abs(K));
  const Vector A = K == 0.0 ? xi_dot0 : Vector(xi_dot0 / w);
  LedrSolution sol;
  sol.h = h;
  sol.source = LedrSource::closed_form;
  sol.states.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * h;
    Vector rate;
    if (K > 0.0)
      rate = w * (A * std::cos(w * t) - xi0 * std::sin(w * t));
    else if (K == 0.0)
      rate = A;
    else
      rate = w * (A * std::cosh(w * t) + xi0 * std::sinh(w * t));
    sol.states.push_back({t, scalar_jacobi_closed_form(K, A, xi0, t), rate});
  }
  return sol;
}

}  // namespace ledr
