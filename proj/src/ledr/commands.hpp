// SPDX-License-Identifier: Apache-2.0
//
// Experiment drivers behind the command-line subcommands. Each writes its
// files into `out_dir` (created when missing) and returns the written paths.
#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "ledr/io.hpp"

namespace ledr {

using PathList = std::vector<std::filesystem::path>;

// true_trajectory.csv, model_trajectory.csv, ledr.csv, manifest.json.
// ledr.csv holds the trajectory difference; the manifest records the discrete
// recurrence seeded from its first two samples and the largest gap between
// the two.
PathList cmd_simulate(const ExperimentConfig& config, const std::filesystem::path& out_dir);

// Tilt of the true initial velocity in the sphere–plane demo, in radians.
inline constexpr double kSpherePlaneTilt = 0.01;

struct SpherePlaneResult {
  double r = 0.0;
  double h = 0.0;
  std::size_t steps = 0;
  FrequencyFit fit;
  double omega_expected = 0.0;  // 1/r
  double omega_d = 0.0;
  double max_closed_form_gap = 0.0;
  DiscreteLedrSeries series;
};

// Runs the demo in memory; horizon defaults to 4πr.
SpherePlaneResult run_sphere_plane(double r, double h, std::optional<double> horizon = std::nullopt);

// sphere_plane_ledr.csv (t,xi0,xi1,closed0,closed1) and sphere_plane_report.json.
PathList cmd_sphere_plane(double r, double h, std::optional<double> horizon, const std::filesystem::path& out_dir);

struct Range {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;

  // Inclusive linear spacing; a single point uses `min`.
  std::vector<double> values() const;
};

std::vector<StabilityRow> stability_grid(const Range& k_range, const Range& h_range);

// stability.csv, K varying slowest.
PathList cmd_stability(const Range& k_range, const Range& h_range, const std::filesystem::path& out_dir);

// curvature_estimate.json for a LEDR CSV.
PathList cmd_estimate_k(const std::filesystem::path& input, std::optional<double> h,
                        const std::filesystem::path& out_dir);

}  // namespace ledr
