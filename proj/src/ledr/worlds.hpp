// SPDX-License-Identifier: Apache-2.0
//
// Preset geometries with analytic oracles.
//
//   flat(n)        Cartesian chart, Γ ≡ 0.
//   sphere(r)      Polar chart (θ, φ), metric r²(dθ² + sin²θ dφ²), valid band
//                  θ ∈ [0.1, π − 0.1]; φ is 2π-periodic.
//   constant_k(K)  2D space form in Fermi coordinates (s, y) along a reference
//                  geodesic: metric c(y)² ds² + dy² with c'' = −K c, c(0) = 1.
//                  The axis y = 0 is a unit-speed geodesic on which every
//                  Christoffel symbol vanishes, so it coincides with the
//                  straight line of a flat model sharing the chart. For K > 0,
//                  s is 2π/√K-periodic and |√K y| ≤ π/2 − 0.1; for K < 0 the
//                  chart is global (band |√−K y| ≤ 20 keeps cosh finite).
#pragma once

#include <memory>
#include <optional>
#include <string>

#include "ledr/geometry.hpp"

namespace ledr {

enum class WorldKind { flat, sphere, constant_k };

struct WorldDescriptor {
  WorldKind kind = WorldKind::flat;
  int dim = 2;
  double radius = 1.0;     // sphere
  double curvature = 0.0;  // constant_k

  static WorldDescriptor flat(int n) { return {WorldKind::flat, n, 1.0, 0.0}; }
  static WorldDescriptor sphere(double r) { return {WorldKind::sphere, 2, r, 0.0}; }
  static WorldDescriptor constant_k(double k) { return {WorldKind::constant_k, 2, 1.0, k}; }

  std::string describe() const;
  // Sectional curvature of the preset (0 for flat).
  double nominal_curvature() const;
};

class AnalyticOracle {
 public:
  virtual ~AnalyticOracle() = default;
  virtual ChartPoint geodesic(const ChartPoint& x0, const TangentVector& v0, double t) const = 0;
  // Initial velocity of the geodesic from base reaching target at t = 1.
  virtual TangentVector log_map(const ChartPoint& base, const ChartPoint& target) const = 0;
  // Position in the ambient model space (R^n for flat, R^3 for the space forms).
  virtual Vector embed(const ChartPoint& x) const = 0;
};

struct WorldPreset {
  WorldDescriptor descriptor;
  ConnectionField connection;
  MetricField metric;
  std::shared_ptr<const AnalyticOracle> analytic;
  Vector periods;  // per-coordinate period, 0 when not periodic

  int dim() const noexcept { return connection.dim(); }
  // a − b with periodic coordinates reduced to the symmetric range.
  Vector chart_difference(const Vector& a, const Vector& b) const;
};

WorldPreset make_world(const WorldDescriptor& descriptor);

ChartPoint analytic_geodesic(const WorldPreset& world, const ChartPoint& x0, const TangentVector& v0,
                             double t);

// Log map on positively curved presets (sphere, constant_k with K > 0).
TangentVector sphere_log(const WorldPreset& world, const ChartPoint& base, const ChartPoint& target);

// A sin(t/r) + B cos(t/r)
Vector sphere_plane_ledr_oracle(double r, const Vector& A, const Vector& B, double t);

// Sphere of radius r (constant_k(1/r²), Fermi chart) against the flat plane,
// both started at the chart origin with unit velocity along the s axis.
struct SpherePlaneSetup {
  WorldPreset true_world;
  WorldPreset model_world;
  Vector x0;
  Vector v0;
};

SpherePlaneSetup sphere_plane_setup(double r);

}  // namespace ledr
