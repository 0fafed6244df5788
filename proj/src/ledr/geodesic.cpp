// SPDX-License-Identifier: Apache-2.0
#include "ledr/geodesic.hpp"

#include <cmath>
#include <sstream>

#include "ledr/error.hpp"

namespace ledr {

const char* to_string(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::rk4: return "rk4";
    case Scheme::semi_implicit_euler: return "semi_implicit_euler";
  }
  return "unknown";
}

namespace {

class GeodesicFlow {
 public:
  explicit GeodesicFlow(const ConnectionField& conn) : conn_(conn) {}

  void check(const Vector& x, const Vector& v, std::size_t step) const {
    if (!x.allFinite() || !v.allFinite()) {
      std::ostringstream os;
      os << "non-finite geodesic state at step " << step << " under '" << conn_.tag() << "'";
      throw Error(ErrorKind::non_finite, os.str());
    }
    if (!conn_.contains(x)) {
      std::ostringstream os;
      os << "trajectory left the chart band of '" << conn_.tag() << "' at step " << step;
      throw ChartExitError(step, os.str());
    }
  }

  Vector acceleration(const Vector& x, const Vector& v) const {
    if (conn_.is_flat()) return Vector::Zero(v.size());
    return -conn_.christoffel(ChartPoint(x)).contract(v, v);
  }

 private:
  const ConnectionField& conn_;
};

}  // namespace

Trajectory integrate_geodesic(const ConnectionField& conn, const ChartPoint& x0, const TangentVector& v0,
                              double h, std::size_t steps, Scheme scheme) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::invalid_argument, "step size h must be > 0");
  if (steps < 1) throw Error(ErrorKind::invalid_argument, "steps must be >= 1");
  if (x0.dim() != conn.dim() || v0.dim() != conn.dim())
    throw Error(ErrorKind::dimension_mismatch, "initial data dimension differs from connection dimension");
  if (!v0.components().allFinite()) throw Error(ErrorKind::non_finite, "non-finite initial velocity");

  GeodesicFlow flow(conn);
  flow.check(x0.coords(), v0.components(), 0);

  Trajectory traj;
  traj.h = h;
  traj.connection_tag = conn.tag();
  traj.points.reserve(steps + 1);
  traj.velocities.reserve(steps + 1);
  traj.points.push_back(x0.coords());
  traj.velocities.push_back(v0.components());

  Vector x = x0.coords();
  Vector v = v0.components();
  for (std::size_t k = 1; k <= steps; ++k) {
    if (conn.is_flat()) {
      // Both schemes reproduce the straight line; evaluate it directly.
      x = x0.coords() + (static_cast<double>(k) * h) * v0.components();
    } else if (scheme == Scheme::rk4) {
      const Vector a1 = flow.acceleration(x, v);
      const Vector x2 = x + 0.5 * h * v, v2 = v + 0.5 * h * a1;
      flow.check(x2, v2, k);
      const Vector a2 = flow.acceleration(x2, v2);
      const Vector x3 = x + 0.5 * h * v2, v3 = v + 0.5 * h * a2;
      flow.check(x3, v3, k);
      const Vector a3 = flow.acceleration(x3, v3);
      const Vector x4 = x + h * v3, v4 = v + h * a3;
      flow.check(x4, v4, k);
      const Vector a4 = flow.acceleration(x4, v4);
      x += (h / 6.0) * (v + 2.0 * v2 + 2.0 * v3 + v4);
      v += (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    } else {  // semi-implicit Euler
      v += h * flow.acceleration(x, v);
      x += h * v;
    }
    flow.check(x, v, k);
    traj.points.push_back(x);
    traj.velocities.push_back(v);
  }
  return traj;
}

Trajectory shadow_integrate(const ConnectionField& model_conn, const ChartPoint& x0, const TangentVector& v0,
                            double h, std::size_t steps, Scheme scheme) {
  return integrate_geodesic(model_conn, x0, v0, h, steps, scheme);
}

TangentVector discrete_velocity(const Trajectory& traj, std::size_t k) {
  if (k < 1 || k + 2 > traj.size()) {
    std::ostringstream os;
    os << "discrete_velocity: index " << k << " outside [1, " << (traj.size() < 2 ? 0 : traj.size() - 2) << "]";
    throw Error(ErrorKind::invalid_argument, os.str());
  }
  return TangentVector(traj.point(k), (traj.points[k + 1] - traj.points[k - 1]) / (2.0 * traj.h));
}

}  // namespace ledr
