// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "ledr/ledr.h"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ledr_capi_" + name);
  fs::remove_all(p);
  return p;
}

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

}  // namespace

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_GT(std::strlen(ledr_version()), 0u);
  EXPECT_STREQ(ledr_status_string(LEDR_OK), "ok");
  EXPECT_STREQ(ledr_regime_string(LEDR_REGIME_OSCILLATORY), "oscillatory");
  EXPECT_STREQ(ledr_regime_string(LEDR_REGIME_DIVERGENT_POSITIVE), "divergent_positive");
}

TEST(CApi, NullArgumentsAreRejected) {
  EXPECT_EQ(ledr_world_sphere(1.0, nullptr), LEDR_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(ledr_classify_stability(1.0, 0.1, nullptr), LEDR_ERR_INVALID_ARGUMENT);
  EXPECT_GT(std::strlen(ledr_last_error_message()), 0u);
  ledr_world_free(nullptr);
  ledr_series_free(nullptr);
  ledr_trajectory_free(nullptr);
  ledr_config_free(nullptr);
}

TEST(CApi, WorldsAndCurvature) {
  ledr_world* w = nullptr;
  ASSERT_EQ(ledr_world_sphere(2.0, &w), LEDR_OK);
  EXPECT_EQ(ledr_world_dim(w), 2);
  const double x[2] = {1.0, 0.2}, u[2] = {1.0, 0.0}, v[2] = {0.0, 1.0};
  double k = 0.0;
  ASSERT_EQ(ledr_world_sectional_curvature(w, x, u, v, &k), LEDR_OK);
  EXPECT_NEAR(k, 0.25, 1e-12);
  EXPECT_EQ(ledr_world_sectional_curvature(w, x, u, u, &k), LEDR_ERR_NUMERICAL);
  ledr_world_free(w);

  ledr_world* bad = nullptr;
  EXPECT_EQ(ledr_world_sphere(-1.0, &bad), LEDR_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(bad, nullptr);
  EXPECT_EQ(ledr_world_flat(0, &bad), LEDR_ERR_INVALID_ARGUMENT);
}

TEST(CApi, GeodesicsAndChartExit) {
  ledr_world* w = nullptr;
  ASSERT_EQ(ledr_world_sphere(1.0, &w), LEDR_OK);
  const double x0[2] = {1.5, 0.0}, v0[2] = {0.0, 1.0};
  ledr_trajectory* t = nullptr;
  ASSERT_EQ(ledr_integrate_geodesic(w, x0, v0, 0.01, 100, LEDR_SCHEME_RK4, &t), LEDR_OK);
  EXPECT_EQ(ledr_trajectory_size(t), 101u);
  double x[2], v[2];
  ASSERT_EQ(ledr_trajectory_sample(t, 100, x, v), LEDR_OK);
  EXPECT_EQ(ledr_trajectory_sample(t, 101, x, v), LEDR_ERR_INVALID_ARGUMENT);
  ledr_trajectory_free(t);

  const double xp[2] = {0.5, 0.0}, vp[2] = {-1.0, 0.0};
  t = nullptr;
  EXPECT_EQ(ledr_integrate_geodesic(w, xp, vp, 0.01, 1000, LEDR_SCHEME_RK4, &t), LEDR_ERR_CHART_EXIT);
  EXPECT_EQ(t, nullptr);
  EXPECT_GE(ledr_last_error_step(), 39u);
  EXPECT_LE(ledr_last_error_step(), 41u);
  EXPECT_EQ(ledr_integrate_geodesic(w, x0, v0, -0.01, 10, LEDR_SCHEME_RK4, &t), LEDR_ERR_INVALID_ARGUMENT);
  ledr_world_free(w);
}

TEST(CApi, SeriesFromTrajectoriesAndCsvRoundTrip) {
  ledr_world *tw = nullptr, *mw = nullptr;
  ASSERT_EQ(ledr_world_constant_k(1.0, &tw), LEDR_OK);
  ASSERT_EQ(ledr_world_flat(2, &mw), LEDR_OK);
  const double x0[2] = {0, 0}, vt[2] = {1, 0.01}, vm[2] = {1, 0};
  ledr_trajectory *a = nullptr, *b = nullptr;
  ASSERT_EQ(ledr_integrate_geodesic(tw, x0, vt, 0.01, 1300, LEDR_SCHEME_RK4, &a), LEDR_OK);
  ASSERT_EQ(ledr_integrate_geodesic(mw, x0, vm, 0.01, 1300, LEDR_SCHEME_RK4, &b), LEDR_OK);
  ledr_series* s = nullptr;
  ASSERT_EQ(ledr_series_from_trajectories(a, b, &s), LEDR_OK);
  EXPECT_EQ(ledr_series_size(s), 1301u);
  EXPECT_EQ(ledr_series_dim(s), 2);
  double xi[2];
  ASSERT_EQ(ledr_series_get(s, 157, xi), LEDR_OK);
  EXPECT_NEAR(xi[1], 0.01 * std::sin(1.57), 1e-5);

  const fs::path dir = scratch("series");
  ASSERT_EQ(ledr_series_write_csv(s, (dir / "ledr.csv").c_str()), LEDR_OK);
  ledr_series* back = nullptr;
  ASSERT_EQ(ledr_series_read_csv((dir / "ledr.csv").c_str(), 0.0, &back), LEDR_OK);
  EXPECT_NEAR(ledr_series_step(back), 0.01, 1e-15);
  double xb[2];
  ASSERT_EQ(ledr_series_get(back, 157, xb), LEDR_OK);
  EXPECT_EQ(xb[1], xi[1]);

  ledr_frequency_fit fit{};
  ASSERT_EQ(ledr_fit_frequency(back, 1, 0.0, &fit), LEDR_OK);
  EXPECT_NEAR(fit.omega, 1.0, 1e-3);

  ASSERT_EQ(ledr_trajectory_write_csv(a, (dir / "traj.csv").c_str()), LEDR_OK);
  EXPECT_TRUE(fs::exists(dir / "traj.csv"));

  ledr_trajectory* short_traj = nullptr;
  ASSERT_EQ(ledr_integrate_geodesic(mw, x0, vm, 0.01, 10, LEDR_SCHEME_RK4, &short_traj), LEDR_OK);
  ledr_series* none = nullptr;
  EXPECT_EQ(ledr_series_from_trajectories(a, short_traj, &none), LEDR_ERR_INVALID_ARGUMENT);

  EXPECT_EQ(ledr_series_read_csv((dir / "missing.csv").c_str(), 0.0, &none), LEDR_ERR_IO);
  write(dir / "bad.csv", "t,xi0\n0,1\n0.1,oops\n");
  EXPECT_EQ(ledr_series_read_csv((dir / "bad.csv").c_str(), 0.0, &none), LEDR_ERR_VALIDATION);
  EXPECT_STREQ(ledr_last_error_field(), "xi0");

  ledr_trajectory_free(short_traj);
  ledr_series_free(back);
  ledr_series_free(s);
  ledr_trajectory_free(a);
  ledr_trajectory_free(b);
  ledr_world_free(tw);
  ledr_world_free(mw);
  fs::remove_all(dir);
}

TEST(CApi, RecurrenceStabilityAndEstimation) {
  const double xi0[1] = {0.0}, xi1[1] = {0.01};
  ledr_series* s = nullptr;
  ASSERT_EQ(ledr_series_recurrence_constant(xi0, xi1, 1, 1000, 0.1, 1.0, &s), LEDR_OK);
  EXPECT_EQ(ledr_series_size(s), 1002u);
  ledr_estimate_summary sum{};
  const fs::path dir = scratch("estimate");
  fs::create_directories(dir);
  ASSERT_EQ(ledr_estimate_curvature(s, &sum, (dir / "k.json").c_str()), LEDR_OK);
  EXPECT_NEAR(sum.median, 1.0, 1e-12);
  EXPECT_TRUE(fs::exists(dir / "k.json"));
  ASSERT_EQ(ledr_estimate_curvature(s, &sum, nullptr), LEDR_OK);

  ledr_stability st{};
  ASSERT_EQ(ledr_classify_stability(1.0, 0.1, &st), LEDR_OK);
  EXPECT_EQ(st.regime, LEDR_REGIME_OSCILLATORY);
  EXPECT_TRUE(st.has_omega_d);
  double wd = 0.0;
  ASSERT_EQ(ledr_discrete_frequency(1.0, 0.1, &wd), LEDR_OK);
  EXPECT_EQ(wd, st.omega_d);
  ASSERT_EQ(ledr_classify_stability(1.0, 2.1, &st), LEDR_OK);
  EXPECT_EQ(st.regime, LEDR_REGIME_DIVERGENT_POSITIVE);
  EXPECT_FALSE(st.has_omega_d);
  EXPECT_NEAR(st.max_root_modulus, 1.8773, 1e-4);
  EXPECT_EQ(ledr_discrete_frequency(1.0, 2.1, &wd), LEDR_ERR_INVALID_ARGUMENT);

  ledr_series* d = nullptr;
  EXPECT_EQ(ledr_series_recurrence_constant(xi0, xi1, 1, 10000, 2.1, 1.0, &d), LEDR_ERR_DIVERGENCE);
  EXPECT_GT(ledr_last_error_step(), 300u);
  ledr_series_free(s);
  fs::remove_all(dir);
}

TEST(CApi, ConfigAndCommands) {
  const fs::path dir = scratch("commands");
  write(dir / "c.cfg",
        "world_true.kind = sphere\nworld_true.r = 1\nworld_model.kind = flat\n"
        "x0 = 1.5, 0\nv0 = 0, 1\nh = 0.01\nsteps = 10\nout = elsewhere\n");
  ledr_config* c = nullptr;
  ASSERT_EQ(ledr_config_load((dir / "c.cfg").c_str(), &c), LEDR_OK);
  EXPECT_STREQ(ledr_config_out(c), "elsewhere");
  ASSERT_EQ(ledr_config_set_steps(c, 50), LEDR_OK);
  EXPECT_EQ(ledr_config_set_h(c, 0.0), LEDR_ERR_VALIDATION);
  ASSERT_EQ(ledr_cmd_simulate(c, (dir / "sim").c_str()), LEDR_OK);
  EXPECT_TRUE(fs::exists(dir / "sim" / "manifest.json"));
  ledr_config_free(c);

  write(dir / "bad.cfg", "world_true.kind = torus\n");
  ledr_config* bad = nullptr;
  EXPECT_EQ(ledr_config_load((dir / "bad.cfg").c_str(), &bad), LEDR_ERR_VALIDATION);
  EXPECT_STREQ(ledr_last_error_field(), "world_true.kind");
  EXPECT_EQ(ledr_config_load((dir / "none.cfg").c_str(), &bad), LEDR_ERR_IO);

  ASSERT_EQ(ledr_cmd_sphere_plane(1.0, 0.01, 0.0, (dir / "sp").c_str()), LEDR_OK);
  EXPECT_TRUE(fs::exists(dir / "sp" / "sphere_plane_report.json"));
  EXPECT_EQ(ledr_cmd_sphere_plane(0.0, 0.01, 0.0, (dir / "sp").c_str()), LEDR_ERR_VALIDATION);
  ASSERT_EQ(ledr_cmd_stability(-1.0, 1.0, 3, 0.1, 2.1, 3, (dir / "st").c_str()), LEDR_OK);
  EXPECT_TRUE(fs::exists(dir / "st" / "stability.csv"));
  ASSERT_EQ(ledr_cmd_estimate_k((dir / "sim" / "ledr.csv").c_str(), 0.0, (dir / "est").c_str()), LEDR_OK);
  EXPECT_TRUE(fs::exists(dir / "est" / "curvature_estimate.json"));
  fs::remove_all(dir);
}
