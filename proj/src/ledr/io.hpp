// SPDX-License-Identifier: Apache-2.0
//
// File formats.
//
//   trajectory CSV  t,x0..x{n-1},v0..v{n-1}
//   LEDR CSV        t,xi0..xi{n-1}
//   stability CSV   K,h,lambda,regime,omega_d,max_root_modulus
//
// Row k carries t = k·h. Numbers are written as the shortest decimal string
// that parses back to the same double. Empty cells stand for absent values.
//
// Experiment configs are flat `key=value` lines with dotted keys; `#` starts a
// comment. Vectors are comma separated.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ledr/analysis.hpp"

namespace ledr {

std::string format_double(double v);
// Whole-string parse; throws ValidationError(schema) naming `field`.
double parse_double(const std::string& text, const std::string& field, std::size_t line, std::size_t column);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const std::string& text);

std::string trajectory_csv(const Trajectory& traj);
Trajectory parse_trajectory_csv(const std::string& text);

std::string ledr_csv(const DiscreteLedrSeries& series);
// `h` overrides the step inferred from the t column.
DiscreteLedrSeries parse_ledr_csv(const std::string& text, std::optional<double> h = std::nullopt);

struct StabilityRow {
  double K = 0.0;
  double h = 0.0;
  StabilityReport report;

  friend bool operator==(const StabilityRow& a, const StabilityRow& b);
};

std::string stability_csv(const std::vector<StabilityRow>& rows);
// Roots are rebuilt from lambda; max_root_modulus is checked against them.
std::vector<StabilityRow> parse_stability_csv(const std::string& text);

std::string curvature_estimate_json(const CurvatureEstimate& estimate);
CurvatureEstimate parse_curvature_estimate_json(const std::string& text);

struct ExperimentConfig {
  WorldDescriptor world_true = WorldDescriptor::flat(2);
  WorldDescriptor world_model = WorldDescriptor::flat(2);
  Vector x0;
  Vector v0;
  Vector dv;  // true-flow velocity perturbation, zero by default
  double h = 0.0;
  std::size_t steps = 0;
  Scheme scheme = Scheme::rk4;
  std::uint64_t seed = 0;
  std::string out;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
// Re-runs the cross-field checks after command-line overrides.
void validate_config(const ExperimentConfig& config);

}  // namespace ledr
