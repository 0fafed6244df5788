// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ledr/error.hpp"
#include "ledr/ledr_discrete.hpp"
#include "ledr/worlds.hpp"
#include "oracles.hpp"

using namespace ledr;

namespace {

Vector scalar(double v) {
  Vector out(1);
  out << v;
  return out;
}

Vector vec(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

DiscreteLedrSeries series_from(const std::vector<double>& values, double h) {
  DiscreteLedrSeries s;
  s.h = h;
  for (double v : values) s.xi.push_back(scalar(v));
  return s;
}

}  // namespace

TEST(CharacteristicRoots, SatisfyVietaRelations) {
  for (double lambda : {-3.0, -0.01, 0.0, 1e-10, 0.5, 2.0, 3.61, 4.0, 4.41, 50.0, 1e6}) {
    const RootPair r = characteristic_roots(lambda);
    const std::complex<double> prod = r[0] * r[1];
    const std::complex<double> sum = r[0] + r[1];
    EXPECT_NEAR(prod.real(), 1.0, 1e-12) << lambda;
    EXPECT_NEAR(prod.imag(), 0.0, 1e-12) << lambda;
    EXPECT_NEAR(sum.real(), 2.0 - lambda, 1e-12 * std::max(1.0, lambda)) << lambda;
    if (lambda > 0.0 && lambda < 4.0) {
      EXPECT_NEAR(std::abs(r[0]), 1.0, 1e-15);
      EXPECT_NEAR(std::abs(r[1]), 1.0, 1e-15);
    }
  }
}

TEST(Stability, ClassifiesEachRegime) {
  EXPECT_EQ(classify_stability(0.0, 0.1).regime, Regime::flat_drift);
  EXPECT_EQ(classify_stability(-1.0, 0.1).regime, Regime::divergent_negative);
  EXPECT_EQ(classify_stability(1.0, 2.0).regime, Regime::degenerate_boundary);
  EXPECT_EQ(classify_stability(1.0 + 2e-14, 2.0).regime, Regime::degenerate_boundary);

  const StabilityReport osc = classify_stability(1.0, 1.9);
  EXPECT_EQ(osc.regime, Regime::oscillatory);
  ASSERT_TRUE(osc.omega_d.has_value());
  EXPECT_NEAR(osc.max_root_modulus(), 1.0, 1e-15);

  const StabilityReport div = classify_stability(1.0, 2.1);
  EXPECT_EQ(div.regime, Regime::divergent_positive);
  EXPECT_FALSE(div.omega_d.has_value());
  // |1 − λ/2 − √(λ²/4 − λ)| at λ = 4.41
  EXPECT_NEAR(div.max_root_modulus(), 1.205 + std::sqrt(1.205 * 1.205 - 1.0), 1e-12);
  EXPECT_NEAR(div.max_root_modulus(), 1.8773, 1e-4);

  EXPECT_THROW(classify_stability(1.0, 0.0), Error);
  EXPECT_THROW(classify_stability(std::nan(""), 0.1), Error);
}

TEST(Stability, RegimeNamesRoundTrip) {
  for (Regime r : {Regime::oscillatory, Regime::degenerate_boundary, Regime::divergent_positive,
                   Regime::divergent_negative, Regime::flat_drift})
    EXPECT_EQ(regime_from_string(to_string(r)), r);
  EXPECT_FALSE(regime_from_string("stable").has_value());
}

TEST(DiscreteFrequency, SatisfiesCosineIdentityAndSmallStepLimit) {
  for (double K : {0.25, 1.0, 4.0}) {
    for (double h : {0.01, 0.1, 0.5}) {
      const double w = discrete_frequency(K, h);
      EXPECT_NEAR(std::cos(w * h), 1.0 - h * h * K / 2.0, 1e-14);
      EXPECT_GE(w, std::sqrt(K));
      EXPECT_LE(w - std::sqrt(K), K * h * h / 2.0);
    }
  }
  // ω_d ≈ √K (1 + h²K/24) for small h.
  const double w = discrete_frequency(1.0, 1e-4);
  EXPECT_NEAR((w - 1.0) / (1e-8 / 24.0), 1.0, 1e-3);
  EXPECT_NEAR(discrete_frequency(1.0, 0.1), 1.00042, 1e-5);
  EXPECT_THROW(discrete_frequency(-1.0, 0.1), Error);
  EXPECT_THROW(discrete_frequency(1.0, 2.0), Error);
  EXPECT_THROW(discrete_frequency(0.0, 0.1), Error);
}

TEST(Recurrence, ConstantCurvatureMatchesClosedForm) {
  for (double h : {0.05, 0.3, 1.9}) {
    const DiscreteLedrSeries s = run_recurrence(scalar(0.4), scalar(-0.1), 500, h, ConstantCurvature{1.0});
    ASSERT_EQ(s.size(), 502u);
    EXPECT_EQ(s.origin, SeriesOrigin::recurrence);
    for (std::size_t k = 0; k < s.size(); ++k)
      EXPECT_NEAR(s.xi[k][0], oracle::recurrence_closed_form(0.4, -0.1, 1.0, h, static_cast<double>(k)),
                  1e-12 * (1.0 + static_cast<double>(k)))
          << h;
  }
}

TEST(Recurrence, PiecewiseWithConstantEntriesEqualsConstant) {
  const DiscreteLedrSeries a = run_recurrence(vec(1, 0), vec(0.9, 0.1), 100, 0.1, ConstantCurvature{2.0});
  const DiscreteLedrSeries b =
      run_recurrence(vec(1, 0), vec(0.9, 0.1), 100, 0.1, PiecewiseCurvature{std::vector<double>(101, 2.0)});
  EXPECT_EQ(a.xi, b.xi);
  EXPECT_THROW(run_recurrence(vec(1, 0), vec(0.9, 0.1), 100, 0.1, PiecewiseCurvature{std::vector<double>(100, 2.0)}),
               Error);
}

TEST(Recurrence, PiecewiseCurvatureAboveFloorStaysBounded) {
  // K_k alternates between 1 and 2; with h < 2/√K_max every step is inside
  // the window and the series oscillates without growing without bound.
  std::vector<double> k(4001);
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = (i / 200) % 2 ? 2.0 : 1.0;
  const DiscreteLedrSeries s = run_recurrence(scalar(0.0), scalar(0.05), 4000, 0.05, PiecewiseCurvature{k});
  double peak = 0.0;
  int crossings = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    peak = std::max(peak, std::abs(s.xi[i][0]));
    if ((s.xi[i][0] > 0) != (s.xi[i - 1][0] > 0)) ++crossings;
  }
  EXPECT_LT(peak, 10.0);
  EXPECT_GT(crossings, 40);
}

TEST(Recurrence, TensorSourceAlongTheAxisReducesToConstantCurvature) {
  const WorldPreset truth = make_world(WorldDescriptor::constant_k(1.0));
  const ConnectionField flat = ConnectionField::flat(2);
  const ChartPoint x0(vec(0.0, 0.0));
  const Trajectory m = integrate_geodesic(flat, x0, TangentVector(x0, vec(1.0, 0.0)), 0.1, 201);
  const DiscreteLedrSeries a = run_recurrence(vec(0, 0), vec(0, 0.1), 200, 0.1, TensorCurvature{&truth.connection, &m});
  const DiscreteLedrSeries b =
      run_recurrence(vec(0, 0), vec(0, 0.1), 200, 0.1, TensorCurvature{&truth.connection, &m, &flat});
  const DiscreteLedrSeries c = run_recurrence(vec(0, 0), vec(0, 0.1), 200, 0.1, ConstantCurvature{1.0});
  for (std::size_t k = 0; k < c.size(); ++k) {
    EXPECT_NEAR((a.xi[k] - c.xi[k]).norm(), 0.0, 1e-12);
    EXPECT_NEAR((b.xi[k] - c.xi[k]).norm(), 0.0, 1e-12);
  }
  EXPECT_THROW(run_recurrence(vec(0, 0), vec(0, 0.1), 500, 0.1, TensorCurvature{&truth.connection, &m}), Error);
}

TEST(Recurrence, DivergenceIsCaughtByTheGuard) {
  try {
    run_recurrence(scalar(0.0), scalar(1.0), 10000, 2.1, ConstantCurvature{1.0});
    FAIL();
  } catch (const DivergenceError& e) {
    // 1.8773^k passes 1e100 near k = 366.
    EXPECT_GT(e.step(), 350u);
    EXPECT_LT(e.step(), 380u);
    EXPECT_GT(e.norm(), 1e100);
  }
  EXPECT_THROW(run_recurrence(scalar(0.0), scalar(1.0), 10, 0.0, ConstantCurvature{1.0}), Error);
  EXPECT_THROW(run_recurrence(scalar(0.0), vec(1.0, 0.0), 10, 0.1, ConstantCurvature{1.0}), Error);
}

TEST(Differences, CentralDifferencesAreExactOnQuadratics) {
  std::vector<double> v;
  const double h = 0.25;
  for (int k = 0; k < 10; ++k) {
    const double t = k * h;
    v.push_back(3.0 * t * t - t + 2.0);
  }
  const DiscreteLedrSeries s = series_from(v, h);
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    const double t = static_cast<double>(k) * h;
    EXPECT_NEAR(discrete_first_diff(s, k)[0], 6.0 * t - 1.0, 1e-12);
    EXPECT_NEAR(discrete_second_diff(s, k)[0], 6.0, 1e-11);
  }
  EXPECT_THROW(discrete_first_diff(s, 0), Error);
  EXPECT_THROW(discrete_second_diff(s, 9), Error);
}

TEST(Estimator, InvertsTheRecurrence) {
  const DiscreteLedrSeries s = run_recurrence(vec(0.0, 1.0), vec(0.1, 0.99), 1000, 0.1, ConstantCurvature{1.7});
  const CurvatureEstimate est = estimate_curvature(s);
  EXPECT_FALSE(est.valid.front());
  EXPECT_FALSE(est.valid.back());
  std::size_t n = 0;
  for (std::size_t k = 0; k < est.k_values.size(); ++k) {
    if (!est.valid[k]) continue;
    ++n;
    EXPECT_NEAR(est.k_values[k], 1.7, 1e-11);
  }
  EXPECT_GT(n, 990u);
  EXPECT_NEAR(summarize(est).median, 1.7, 1e-12);
}

TEST(Estimator, SineSamplesGiveSecondDifferenceBias) {
  for (double h : {0.2, 0.1, 0.05}) {
    std::vector<double> v;
    for (int k = 0; k < 400; ++k) v.push_back(std::sin(k * h) + 0.0);
    const CurvatureEstimate est = estimate_curvature(series_from(v, h));
    EXPECT_NEAR(summarize(est).median, 2.0 * (1.0 - std::cos(h)) / (h * h), 1e-9) << h;
  }
}

TEST(Estimator, ZeroSamplesAreInvalid) {
  const DiscreteLedrSeries s = series_from({1.0, 0.5, 0.0, -0.5, -1.0, -0.5}, 0.1);
  const CurvatureEstimate est = estimate_curvature(s);
  EXPECT_FALSE(est.valid[2]);
  EXPECT_TRUE(std::isnan(est.k_values[2]));
  EXPECT_TRUE(est.valid[1]);
  const CurvatureEstimate zero = estimate_curvature(series_from({0.0, 0.0, 0.0, 0.0}, 0.1));
  EXPECT_EQ(summarize(zero).n_valid, 0u);
  EXPECT_TRUE(std::isnan(summarize(zero).median));
  EXPECT_THROW(estimate_curvature(series_from({1.0, 2.0}, 0.1)), Error);
}

TEST(Estimator, SummaryUsesLinearInterpolationQuartiles) {
  CurvatureEstimate est;
  est.k_values = {std::nan(""), 5.0, 1.0, 4.0, 2.0, 3.0, std::nan("")};
  est.valid = {false, true, true, true, true, true, false};
  const EstimateSummary s = summarize(est);
  EXPECT_EQ(s.n_valid, 5u);
  EXPECT_DOUBLE_EQ(s.median, 3.0);
  EXPECT_DOUBLE_EQ(s.q1, 2.0);
  EXPECT_DOUBLE_EQ(s.q3, 4.0);
  EXPECT_DOUBLE_EQ(s.iqr, 2.0);
  est.k_values = {1.0, 2.0, 3.0, 4.0};
  est.valid = {true, true, true, true};
  EXPECT_DOUBLE_EQ(summarize(est).median, 2.5);
  EXPECT_DOUBLE_EQ(summarize(est).q1, 1.75);
}

TEST(Probe, NoMismatchMakesNoClaim) {
  std::vector<double> v;
  for (int k = 0; k < 200; ++k) v.push_back(std::exp(-0.05 * k));
  const DiscreteLedrSeries s = series_from(v, 0.1);
  const std::vector<double> K(200, 1.0);
  const MismatchProbeReport r = mismatch_lower_bound_probe(s, K, K);
  EXPECT_EQ(r.mismatch_integral.back(), 0.0);
  EXPECT_FALSE(r.non_decay.has_value());
  EXPECT_FALSE(r.c_hat.has_value());
  EXPECT_FALSE(r.obstruction_violated);
}

TEST(Probe, PersistentMismatchOscillationDoesNotDecay) {
  for (double kappa : {0.25, 1.0, 4.0}) {
    const double h = 0.01;
    const auto steps = static_cast<std::size_t>(50 * 2 * std::numbers::pi / std::sqrt(kappa) / h);
    const DiscreteLedrSeries s = run_recurrence(vec(0.0, 0.0), vec(0.0, 0.01), steps, h, ConstantCurvature{kappa});
    const std::vector<double> kt(s.size(), kappa), km(s.size(), 0.0);
    ProbeOptions opts;
    opts.kappa0 = kappa;
    const MismatchProbeReport r = mismatch_lower_bound_probe(s, kt, km, opts);
    ASSERT_TRUE(r.non_decay.has_value());
    EXPECT_TRUE(*r.non_decay) << kappa;
    EXPECT_GE(r.min_window_sup, 0.1 * r.early_amplitude);
    EXPECT_NEAR(r.mismatch_integral.back(), kappa * h * static_cast<double>(s.size() - 1), 1e-9 * kappa * steps * h);
    ASSERT_TRUE(r.c_hat.has_value());
    EXPECT_GT(*r.c_hat, 0.0);
  }
}

TEST(Probe, DecayUnderDeclaredMismatchFlagsObstruction) {
  std::vector<double> v;
  for (int k = 0; k < 2000; ++k) v.push_back(std::exp(-0.01 * k) * std::sin(0.1 * k));
  const DiscreteLedrSeries s = series_from(v, 0.1);
  const std::vector<double> kt(v.size(), 1.0), km(v.size(), 0.0);
  ProbeOptions opts;
  opts.kappa0 = 1.0;
  const MismatchProbeReport r = mismatch_lower_bound_probe(s, kt, km, opts);
  ASSERT_TRUE(r.non_decay.has_value());
  EXPECT_FALSE(*r.non_decay);
  EXPECT_TRUE(r.obstruction_violated);
}

TEST(Probe, ValidatesInputs) {
  const DiscreteLedrSeries s = series_from({1, 0.5, -0.5, -1}, 0.1);
  EXPECT_THROW(mismatch_lower_bound_probe(s, {1, 1, 1}, {0, 0, 0, 0}), Error);
  ProbeOptions opts;
  opts.kappa0 = 2.0;
  EXPECT_THROW(mismatch_lower_bound_probe(s, {1, 1, 1, 1}, {0, 0, 0, 0}, opts), Error);
}

TEST(Probe, SlidingWindowMinimumMatchesBruteForce) {
  auto g = oracle::rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v;
    const int n = 50 + trial * 7;
    for (int k = 0; k < n; ++k) v.push_back(oracle::uniform(g, -1.0, 1.0));
    const std::size_t w = 1 + static_cast<std::size_t>(trial % 9);
    ProbeOptions opts;
    opts.window = w;
    const MismatchProbeReport r =
        mismatch_lower_bound_probe(series_from(v, 0.1), std::vector<double>(n, 1.0), std::vector<double>(n, 0.0), opts);
    double expected = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s + w <= v.size(); ++s) {
      double m = 0.0;
      for (std::size_t k = s; k < s + w; ++k) m = std::max(m, std::abs(v[k]));
      expected = std::min(expected, m);
    }
    EXPECT_EQ(r.min_window_sup, expected);
    EXPECT_EQ(r.window, w);
  }
}
