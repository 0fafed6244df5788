// SPDX-License-Identifier: Apache-2.0
#include "ledr/worlds.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "ledr/error.hpp"

namespace ledr {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPolarBand = 0.1;

class FlatOracle final : public AnalyticOracle {
 public:
  ChartPoint geodesic(const ChartPoint& x0, const TangentVector& v0, double t) const override {
    return ChartPoint(x0.coords() + t * v0.components());
  }
  TangentVector log_map(const ChartPoint& base, const ChartPoint& target) const override {
    return TangentVector(base, target.coords() - base.coords());
  }
  Vector embed(const ChartPoint& x) const override { return x.coords(); }
};

// 2D constant-curvature chart embedded in R^3: the round sphere (Euclidean
// ambient form) or the upper hyperboloid sheet (Minkowski form −,+,+).
class SpaceFormOracle : public AnalyticOracle {
 public:
  SpaceFormOracle(double radius, int sign) : radius_(radius), sign_(sign) {}

  virtual Eigen::Vector3d to_ambient(const Vector& x) const = 0;
  virtual Eigen::Matrix<double, 3, 2> jacobian(const Vector& x) const = 0;
  virtual Vector from_ambient(const Eigen::Vector3d& p) const = 0;

  double ambient_inner(const Eigen::Vector3d& a, const Eigen::Vector3d& b) const {
    return (sign_ > 0 ? a[0] * b[0] : -a[0] * b[0]) + a[1] * b[1] + a[2] * b[2];
  }

  Vector embed(const ChartPoint& x) const override { return to_ambient(x.coords()); }

  ChartPoint geodesic(const ChartPoint& x0, const TangentVector& v0, double t) const override {
    const Eigen::Vector3d p0 = to_ambient(x0.coords());
    const Eigen::Vector3d u = jacobian(x0.coords()) * v0.components();
    const double speed = std::sqrt(std::max(0.0, ambient_inner(u, u)));
    if (speed == 0.0) return x0;
    const double w = speed / radius_;
    const Eigen::Vector3d p = sign_ > 0 ? Eigen::Vector3d(std::cos(w * t) * p0 + std::sin(w * t) / w * u)
                                        : Eigen::Vector3d(std::cosh(w * t) * p0 + std::sinh(w * t) / w * u);
    return ChartPoint(from_ambient(p));
  }

  TangentVector log_map(const ChartPoint& base, const ChartPoint& target) const override {
    const Eigen::Vector3d p = to_ambient(base.coords());
    const Eigen::Vector3d q = to_ambient(target.coords());
    const double r2 = radius_ * radius_;
    double c = sign_ * ambient_inner(p, q) / r2;  // cos a (sphere) or cosh a (hyperboloid)
    const Eigen::Vector3d w = q - c * p;
    const double wn = std::sqrt(std::max(0.0, ambient_inner(w, w)));
    double angle = 0.0;
    if (sign_ > 0) {
      angle = std::atan2(wn / radius_, c);
      if (radius_ * angle > kPi * radius_ - 1e-8 * radius_)
        throw Error(ErrorKind::invalid_argument, "log map undefined: target is antipodal to base");
    } else {
      angle = std::asinh(wn / radius_);
    }
    if (wn == 0.0) return TangentVector(base, Vector::Zero(2));
    const Eigen::Vector3d u = (radius_ * angle / wn) * w;
    const Eigen::Matrix<double, 3, 2> J = jacobian(base.coords());
    Eigen::Matrix3d eta = Eigen::Matrix3d::Identity();
    eta(0, 0) = sign_;
    const Eigen::Matrix2d g = J.transpose() * eta * J;
    const Eigen::Vector2d v = g.ldlt().solve(J.transpose() * eta * u);
    return TangentVector(base, v);
  }

 protected:
  double radius_;
  int sign_;
};

class PolarSphereOracle final : public SpaceFormOracle {
 public:
  explicit PolarSphereOracle(double r) : SpaceFormOracle(r, +1) {}

  Eigen::Vector3d to_ambient(const Vector& x) const override {
    const double th = x[0], ph = x[1];
    return radius_ * Eigen::Vector3d(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
  }
  Eigen::Matrix<double, 3, 2> jacobian(const Vector& x) const override {
    const double th = x[0], ph = x[1];
    Eigen::Matrix<double, 3, 2> J;
    J << std::cos(th) * std::cos(ph), -std::sin(th) * std::sin(ph),
        std::cos(th) * std::sin(ph), std::sin(th) * std::cos(ph),
        -std::sin(th), 0.0;
    return radius_ * J;
  }
  Vector from_ambient(const Eigen::Vector3d& p) const override {
    Vector x(2);
    x << std::atan2(std::hypot(p[0], p[1]), p[2]), std::atan2(p[1], p[0]);
    return x;
  }
};

// Fermi coordinates (s, y) along the reference geodesic of a space form.
class FermiOracle final : public SpaceFormOracle {
 public:
  explicit FermiOracle(double k)
      : SpaceFormOracle(1.0 / std::sqrt(std::abs(k)), k > 0 ? +1 : -1), a_(std::sqrt(std::abs(k))) {}

  Eigen::Vector3d to_ambient(const Vector& x) const override {
    const double s = a_ * x[0], y = a_ * x[1];
    if (sign_ > 0)
      return radius_ * Eigen::Vector3d(std::cos(y) * std::cos(s), std::cos(y) * std::sin(s), std::sin(y));
    return radius_ * Eigen::Vector3d(std::cosh(y) * std::cosh(s), std::cosh(y) * std::sinh(s), std::sinh(y));
  }
  Eigen::Matrix<double, 3, 2> jacobian(const Vector& x) const override {
    const double s = a_ * x[0], y = a_ * x[1];
    Eigen::Matrix<double, 3, 2> J;
    if (sign_ > 0) {
      J << -std::cos(y) * std::sin(s), -std::sin(y) * std::cos(s),
          std::cos(y) * std::cos(s), -std::sin(y) * std::sin(s),
          0.0, std::cos(y);
    } else {
      J << std::cosh(y) * std::sinh(s), std::sinh(y) * std::cosh(s),
          std::cosh(y) * std::cosh(s), std::sinh(y) * std::sinh(s),
          0.0, std::cosh(y);
    }
    return J;
  }
  Vector from_ambient(const Eigen::Vector3d& p) const override {
    Vector x(2);
    if (sign_ > 0) {
      x << radius_ * std::atan2(p[1], p[0]), radius_ * std::atan2(p[2], std::hypot(p[0], p[1]));
    } else {
      x << radius_ * std::atanh(p[1] / p[0]), radius_ * std::asinh(p[2] / radius_);
    }
    return x;
  }

 private:
  double a_;
};

WorldPreset make_flat(const WorldDescriptor& d) {
  if (d.dim < 1) throw Error(ErrorKind::invalid_argument, "flat world requires n >= 1");
  return WorldPreset{d, ConnectionField::flat(d.dim), MetricField::euclidean(d.dim),
                     std::make_shared<FlatOracle>(), Vector::Zero(d.dim)};
}

WorldPreset make_sphere(const WorldDescriptor& d) {
  const double r = d.radius;
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::invalid_argument, "sphere radius must be > 0");
  auto gamma = [](const Vector& x) {
    Tensor3 G(2);
    const double th = x[0];
    G(0, 1, 1) = -std::sin(th) * std::cos(th);
    G(1, 0, 1) = G(1, 1, 0) = std::cos(th) / std::sin(th);
    return G;
  };
  auto partials = [](const Vector& x) {
    Tensor4 D(2);
    const double th = x[0];
    const double s = std::sin(th);
    D(0, 0, 1, 1) = -std::cos(2.0 * th);
    D(0, 1, 0, 1) = D(0, 1, 1, 0) = -1.0 / (s * s);
    return D;
  };
  auto domain = [](const Vector& x) { return x[0] >= kPolarBand && x[0] <= kPi - kPolarBand; };
  auto metric = [r](const Vector& x) {
    Matrix g = Matrix::Zero(2, 2);
    const double s = std::sin(x[0]);
    g(0, 0) = r * r;
    g(1, 1) = r * r * s * s;
    return g;
  };
  std::ostringstream tag;
  tag << "sphere(r=" << r << ")";
  Vector periods(2);
  periods << 0.0, 2.0 * kPi;
  return WorldPreset{d, ConnectionField(2, gamma, partials, domain, tag.str()), MetricField(2, metric),
                     std::make_shared<PolarSphereOracle>(r), periods};
}

WorldPreset make_constant_k(const WorldDescriptor& d) {
  const double k = d.curvature;
  if (!std::isfinite(k)) throw Error(ErrorKind::invalid_argument, "constant_k curvature must be finite");
  if (k == 0.0) {
    WorldPreset w = make_flat(WorldDescriptor::flat(2));
    w.descriptor = d;
    return w;
  }
  const double a = std::sqrt(std::abs(k));
  // c(y), c'(y) for the warping factor of the Fermi metric.
  auto warp = [k, a](double y) -> std::pair<double, double> {
    if (k > 0) return {std::cos(a * y), -a * std::sin(a * y)};
    return {std::cosh(a * y), a * std::sinh(a * y)};
  };
  auto gamma = [warp](const Vector& x) {
    Tensor3 G(2);
    const auto [c, dc] = warp(x[1]);
    G(1, 0, 0) = -c * dc;
    G(0, 0, 1) = G(0, 1, 0) = dc / c;
    return G;
  };
  auto partials = [warp, k](const Vector& x) {
    Tensor4 D(2);
    const auto [c, dc] = warp(x[1]);
    D(1, 1, 0, 0) = -(dc * dc - k * c * c);
    D(1, 0, 0, 1) = D(1, 0, 1, 0) = -k - (dc / c) * (dc / c);
    return D;
  };
  const double band = k > 0 ? (kPi / 2.0 - kPolarBand) / a : 20.0 / a;
  auto domain = [band](const Vector& x) { return std::abs(x[1]) <= band; };
  auto metric = [warp](const Vector& x) {
    Matrix g = Matrix::Identity(2, 2);
    const double c = warp(x[1]).first;
    g(0, 0) = c * c;
    return g;
  };
  std::ostringstream tag;
  tag << "constant_k(K=" << k << ")";
  Vector periods = Vector::Zero(2);
  if (k > 0) periods[0] = 2.0 * kPi / a;
  return WorldPreset{d, ConnectionField(2, gamma, partials, domain, tag.str()), MetricField(2, metric),
                     std::make_shared<FermiOracle>(k), periods};
}

}  // namespace

std::string WorldDescriptor::describe() const {
  auto num = [](double v) {
    char buf[32];
    return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
  };
  switch (kind) {
    case WorldKind::flat: return "flat(n=" + std::to_string(dim) + ")";
    case WorldKind::sphere: return "sphere(r=" + num(radius) + ")";
    case WorldKind::constant_k: return "constant_k(K=" + num(curvature) + ")";
  }
  return "unknown";
}

double WorldDescriptor::nominal_curvature() const {
  switch (kind) {
    case WorldKind::flat: return 0.0;
    case WorldKind::sphere: return 1.0 / (radius * radius);
    case WorldKind::constant_k: return curvature;
  }
  return 0.0;
}

Vector WorldPreset::chart_difference(const Vector& a, const Vector& b) const {
  Vector d = a - b;
  for (int i = 0; i < d.size(); ++i)
    if (i < periods.size() && periods[i] > 0.0) d[i] -= periods[i] * std::round(d[i] / periods[i]);
  return d;
}

WorldPreset make_world(const WorldDescriptor& descriptor) {
  switch (descriptor.kind) {
    case WorldKind::flat: return make_flat(descriptor);
    case WorldKind::sphere: return make_sphere(descriptor);
    case WorldKind::constant_k: return make_constant_k(descriptor);
  }
  throw Error(ErrorKind::invalid_argument, "unknown world kind");
}

ChartPoint analytic_geodesic(const WorldPreset& world, const ChartPoint& x0, const TangentVector& v0,
                             double t) {
  if (!world.analytic) throw Error(ErrorKind::no_oracle, "world has no analytic oracle");
  if (x0.dim() != world.dim() || v0.dim() != world.dim())
    throw Error(ErrorKind::dimension_mismatch, "analytic_geodesic: dimension mismatch");
  return world.analytic->geodesic(x0, v0, t);
}

TangentVector sphere_log(const WorldPreset& world, const ChartPoint& base, const ChartPoint& target) {
  if (!world.analytic) throw Error(ErrorKind::no_oracle, "world has no analytic oracle");
  if (!(world.descriptor.nominal_curvature() > 0.0))
    throw Error(ErrorKind::invalid_argument, "sphere_log requires a positively curved world");
  return world.analytic->log_map(base, target);
}

Vector sphere_plane_ledr_oracle(double r, const Vector& A, const Vector& B, double t) {
  if (!(r > 0.0)) throw Error(ErrorKind::invalid_argument, "sphere radius must be > 0");
  if (A.size() != B.size()) throw Error(ErrorKind::dimension_mismatch, "A and B differ in dimension");
  return A * std::sin(t / r) + B * std::cos(t / r);
}

SpherePlaneSetup sphere_plane_setup(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::invalid_argument, "sphere radius must be > 0");
  Vector x0 = Vector::Zero(2);
  Vector v0(2);
  v0 << 1.0, 0.0;
  return SpherePlaneSetup{make_world(WorldDescriptor::constant_k(1.0 / (r * r))),
                          make_world(WorldDescriptor::flat(2)), x0, v0};
}

}  // namespace ledr
