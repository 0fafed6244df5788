// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ledr/error.hpp"
#include "ledr/geometry.hpp"
#include "ledr/worlds.hpp"
#include "oracles.hpp"

using namespace ledr;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

Vector random_sphere_point(std::mt19937_64& g) {
  return vec({oracle::uniform(g, 0.15, std::numbers::pi - 0.15), oracle::uniform(g, -3.0, 3.0)});
}

}  // namespace

TEST(ChartPoint, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(ChartPoint(Vector(0)), Error);
  EXPECT_THROW(ChartPoint(vec({0.0, std::nan("")})), Error);
  EXPECT_NO_THROW(ChartPoint(vec({1.0, 2.0})));
}

TEST(Connection, FlatHasZeroChristoffelAndCurvature) {
  auto g = oracle::rng();
  for (int n : {1, 2, 3}) {
    const ConnectionField flat = ConnectionField::flat(n);
    for (int trial = 0; trial < 10; ++trial) {
      const ChartPoint x(oracle::uniform_vector(g, n, -100.0, 100.0));
      const Tensor3 G = flat.christoffel(x);
      const CurvatureValue R = curvature_at(flat, x);
      for (double v : G.data()) EXPECT_EQ(v, 0.0);
      for (double v : R.components().data()) EXPECT_EQ(v, 0.0);
    }
  }
}

TEST(Connection, SphereChristoffelMatchesMetricDerivatives) {
  auto g = oracle::rng();
  const WorldPreset w = make_world(WorldDescriptor::sphere(1.7));
  auto metric = [&](const Vector& x) { return w.metric.at(ChartPoint(x)); };
  for (int trial = 0; trial < 25; ++trial) {
    const Vector x = random_sphere_point(g);
    const Tensor3 ref = oracle::christoffel_from_metric(metric, x);
    const Tensor3 got = w.connection.christoffel(ChartPoint(x));
    for (std::size_t n = 0; n < ref.data().size(); ++n) EXPECT_NEAR(got.data()[n], ref.data()[n], 1e-7);
  }
}

TEST(Connection, FermiChartChristoffelMatchesMetricDerivatives) {
  auto g = oracle::rng(7);
  for (double K : {0.5, 2.0, -1.0}) {
    const WorldPreset w = make_world(WorldDescriptor::constant_k(K));
    auto metric = [&](const Vector& x) { return w.metric.at(ChartPoint(x)); };
    for (int trial = 0; trial < 10; ++trial) {
      const Vector x = vec({oracle::uniform(g, -2.0, 2.0), oracle::uniform(g, -0.6, 0.6)});
      const Tensor3 ref = oracle::christoffel_from_metric(metric, x);
      const Tensor3 got = w.connection.christoffel(ChartPoint(x));
      for (std::size_t n = 0; n < ref.data().size(); ++n) EXPECT_NEAR(got.data()[n], ref.data()[n], 1e-7) << K;
    }
  }
}

TEST(Connection, FiniteDifferencePartialsAgreeWithClosedForm) {
  auto g = oracle::rng(3);
  const WorldPreset w = make_world(WorldDescriptor::sphere(1.0));
  const ConnectionField fd(
      2, [&](const Vector& x) { return w.connection.christoffel(ChartPoint(x)); }, std::nullopt, {}, "fd");
  EXPECT_FALSE(fd.has_closed_form_partials());
  for (int trial = 0; trial < 20; ++trial) {
    const ChartPoint x(random_sphere_point(g));
    const Tensor4 a = w.connection.christoffel_partials(x);
    const Tensor4 b = fd.christoffel_partials(x);
    for (std::size_t n = 0; n < a.data().size(); ++n) EXPECT_NEAR(a.data()[n], b.data()[n], 1e-6);
  }
}

TEST(Connection, RejectsTorsionAndNonFiniteSymbols) {
  const ConnectionField torsion(2, [](const Vector&) {
    Tensor3 G(2);
    G(0, 0, 1) = 1.0;
    return G;
  });
  EXPECT_THROW(torsion.christoffel(ChartPoint(vec({0.0, 0.0}))), Error);

  const ConnectionField bad(2, [](const Vector&) {
    Tensor3 G(2);
    G(1, 1, 1) = std::numeric_limits<double>::infinity();
    return G;
  });
  try {
    bad.christoffel(ChartPoint(vec({0.0, 0.0})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::non_finite);
  }
  EXPECT_THROW(ConnectionField::flat(2).christoffel(ChartPoint(vec({0.0, 0.0, 0.0}))), Error);
}

TEST(Curvature, SpaceFormsMatchConstantCurvatureFormula) {
  auto g = oracle::rng(11);
  struct Case {
    WorldDescriptor d;
    double K;
  };
  const std::vector<Case> cases{{WorldDescriptor::sphere(1.0), 1.0},
                                {WorldDescriptor::sphere(2.5), 0.16},
                                {WorldDescriptor::constant_k(1.0), 1.0},
                                {WorldDescriptor::constant_k(0.25), 0.25},
                                {WorldDescriptor::constant_k(-1.0), -1.0}};
  for (const auto& c : cases) {
    const WorldPreset w = make_world(c.d);
    for (int trial = 0; trial < 10; ++trial) {
      Vector x = c.d.kind == WorldKind::sphere ? random_sphere_point(g)
                                               : vec({oracle::uniform(g, -3.0, 3.0), oracle::uniform(g, -0.8, 0.8)});
      const ChartPoint p(x);
      const Tensor4 ref = oracle::space_form_riemann(c.K, w.metric.at(p));
      const Tensor4 got = curvature_at(w.connection, p).components();
      for (std::size_t n = 0; n < ref.data().size(); ++n) EXPECT_NEAR(got.data()[n], ref.data()[n], 1e-10) << c.d.describe();
    }
  }
}

TEST(Curvature, AntisymmetricInLastPairAndSatisfiesBianchi) {
  auto g = oracle::rng(5);
  const ConnectionField poly = oracle::polynomial_connection();
  const WorldPreset sphere = make_world(WorldDescriptor::sphere(1.3));
  for (int trial = 0; trial < 20; ++trial) {
    const ChartPoint xp(oracle::uniform_vector(g, 2, -1.0, 1.0));
    const ChartPoint xs(random_sphere_point(g));
    for (const auto& [R, tol] : {std::pair{curvature_at(poly, xp).components(), 1e-6},
                                 std::pair{curvature_at(sphere.connection, xs).components(), 1e-12}}) {
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int l = 0; l < 2; ++l)
            for (int m = 0; m < 2; ++m) {
              EXPECT_NEAR(R(i, j, l, m), -R(i, j, m, l), 1e-10);
              EXPECT_NEAR(R(i, j, l, m) + R(i, l, m, j) + R(i, m, j, l), 0.0, tol);
            }
    }
  }
}

TEST(Curvature, SphereSectionalCurvatureIsInverseRadiusSquared) {
  auto g = oracle::rng(13);
  for (double r : {0.5, 1.0, 3.0}) {
    const WorldPreset w = make_world(WorldDescriptor::sphere(r));
    for (int trial = 0; trial < 20; ++trial) {
      const ChartPoint x(random_sphere_point(g));
      const CurvatureValue R = curvature_at(w.connection, x);
      const Vector u = oracle::uniform_vector(g, 2, -1.0, 1.0);
      const Vector v = oracle::uniform_vector(g, 2, -1.0, 1.0);
      const double K = sectional_curvature(w.metric, R, TangentVector(x, u), TangentVector(x, v));
      EXPECT_NEAR(K, 1.0 / (r * r), 1e-9);
      // Independent of the basis chosen for the plane.
      const double K2 =
          sectional_curvature(w.metric, R, TangentVector(x, 2.0 * u - v), TangentVector(x, 0.5 * u + 3.0 * v));
      EXPECT_NEAR(K2, K, 1e-9);
    }
  }
}

TEST(Curvature, DegeneratePlaneAndBaseMismatchAreReported) {
  const WorldPreset w = make_world(WorldDescriptor::sphere(1.0));
  const ChartPoint x(vec({1.0, 0.0}));
  const CurvatureValue R = curvature_at(w.connection, x);
  try {
    sectional_curvature(w.metric, R, TangentVector(x, vec({1.0, 2.0})), TangentVector(x, vec({2.0, 4.0})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::degenerate);
  }
  const ChartPoint y(vec({1.1, 0.0}));
  EXPECT_THROW(jacobi_apply(R, TangentVector(y, vec({1.0, 0.0})), TangentVector(x, vec({0.0, 1.0}))), Error);
}

TEST(Curvature, JacobiOperatorOnUnitPerpendicularGivesKTimesXi) {
  const WorldPreset w = make_world(WorldDescriptor::constant_k(2.0));
  const ChartPoint x(vec({0.4, 0.0}));
  const CurvatureValue R = curvature_at(w.connection, x);
  const TangentVector out = jacobi_apply(R, TangentVector(x, vec({1.0, 0.0})), TangentVector(x, vec({0.0, 0.3})));
  EXPECT_NEAR(out[0], 0.0, 1e-14);
  EXPECT_NEAR(out[1], 2.0 * 0.3, 1e-14);
}

TEST(Metric, RejectsNonPositiveDefinite) {
  const MetricField bad(2, [](const Vector&) {
    Matrix g(2, 2);
    g << 1.0, 0.0, 0.0, -1.0;
    return g;
  });
  EXPECT_THROW(bad.at(ChartPoint(vec({0.0, 0.0}))), Error);
  const MetricField asym(2, [](const Vector&) {
    Matrix g(2, 2);
    g << 1.0, 0.5, 0.0, 1.0;
    return g;
  });
  EXPECT_THROW(asym.at(ChartPoint(vec({0.0, 0.0}))), Error);
}

TEST(Mismatch, ForcingIsMinusMismatchContractedTwice) {
  const WorldPreset s = make_world(WorldDescriptor::sphere(1.0));
  const ConnectionField flat = ConnectionField::flat(2);
  const ChartPoint x(vec({0.7, 0.2}));
  const Tensor3 d = connection_mismatch(s.connection, flat, x);
  const TangentVector T(x, vec({0.3, -1.1}));
  const TangentVector F = forcing_term(d, T);
  const double th = 0.7;
  // Γ^θ_{φφ} = −sinθcosθ, Γ^φ_{θφ} = cotθ
  EXPECT_NEAR(F[0], std::sin(th) * std::cos(th) * 1.1 * 1.1, 1e-14);
  EXPECT_NEAR(F[1], -2.0 * std::cos(th) / std::sin(th) * 0.3 * -1.1, 1e-14);
  const Tensor3 back = connection_mismatch(flat, s.connection, x);
  for (std::size_t n = 0; n < d.data().size(); ++n) EXPECT_EQ(back.data()[n], -d.data()[n]);
}
