// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ledr/geometry.hpp"

namespace ledr {

enum class Scheme { rk4, semi_implicit_euler };

const char* to_string(Scheme scheme) noexcept;

// Uniformly sampled geodesic: sample k sits at t = k·h.
struct Trajectory {
  double h = 0.0;
  std::vector<Vector> points;
  std::vector<Vector> velocities;
  std::string connection_tag;

  std::size_t size() const noexcept { return points.size(); }
  int dim() const noexcept { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
  ChartPoint point(std::size_t k) const { return ChartPoint(points.at(k)); }
  TangentVector velocity(std::size_t k) const { return TangentVector(point(k), velocities.at(k)); }
};

// Fixed-step integration of ẍ^i + Γ^i_{jk} ẋ^j ẋ^k = 0. Returns steps + 1
// samples; sample 0 is (x0, v0) exactly. Every intermediate stage is checked
// against the connection's chart band.
Trajectory integrate_geodesic(const ConnectionField& conn, const ChartPoint& x0, const TangentVector& v0,
                              double h, std::size_t steps, Scheme scheme = Scheme::rk4);

// Same integration under the model connection; kept separate so logs and
// outputs name the role explicitly.
Trajectory shadow_integrate(const ConnectionField& model_conn, const ChartPoint& x0, const TangentVector& v0,
                            double h, std::size_t steps, Scheme scheme = Scheme::rk4);

// (x_{k+1} − x_{k−1}) / 2h, for 1 ≤ k ≤ size − 2.
TangentVector discrete_velocity(const Trajectory& traj, std::size_t k);

}  // namespace ledr
