// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ledr/ledr.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitValidation = 2;
constexpr int kExitChartExit = 3;
constexpr int kExitDivergence = 4;
constexpr int kExitIo = 5;

int exit_code(ledr_status status) {
  switch (status) {
    case LEDR_OK: return kExitOk;
    case LEDR_ERR_INVALID_ARGUMENT:
    case LEDR_ERR_VALIDATION: return kExitValidation;
    case LEDR_ERR_CHART_EXIT: return kExitChartExit;
    case LEDR_ERR_DIVERGENCE: return kExitDivergence;
    case LEDR_ERR_IO: return kExitIo;
    default: return kExitOther;
  }
}

int report(ledr_status status, const std::string& out_dir) {
  if (status == LEDR_OK) {
    std::printf("wrote %s\n", out_dir.c_str());
    return kExitOk;
  }
  std::fprintf(stderr, "ledr: %s: %s\n", ledr_status_string(status), ledr_last_error_message());
  if (status == LEDR_ERR_CHART_EXIT || status == LEDR_ERR_DIVERGENCE)
    std::fprintf(stderr, "ledr: aborted at step %zu\n", ledr_last_error_step());
  return exit_code(status);
}

std::string resolve_out(const std::string& flag, const std::string& fallback = {}) {
  if (!flag.empty()) return flag;
  if (!fallback.empty()) return fallback;
  if (const char* env = std::getenv("LEDR_OUT_DIR"); env && *env) return env;
  return ".";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latent error dynamics between a true and a model geodesic flow"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ledr_version()));

  std::string out;

  auto* sim = app.add_subcommand("simulate", "Integrate both flows and write trajectories, LEDR and a manifest");
  std::string config_path;
  std::optional<double> sim_h;
  std::optional<std::size_t> sim_steps;
  std::optional<std::uint64_t> sim_seed;
  sim->add_option("--config", config_path, "Experiment config file")->required();
  sim->add_option("--out", out, "Output directory");
  sim->add_option("--h", sim_h, "Override the step size");
  sim->add_option("--steps", sim_steps, "Override the step count");
  sim->add_option("--seed", sim_seed, "Override the seed");

  auto* sp = app.add_subcommand("sphere-plane", "Sphere against plane demo with closed-form comparison");
  double sp_r = 1.0, sp_h = 1e-3, sp_horizon = 0.0;
  sp->add_option("--r", sp_r, "Sphere radius")->capture_default_str();
  sp->add_option("--h", sp_h, "Step size")->capture_default_str();
  sp->add_option("--horizon", sp_horizon, "Time horizon (default 4*pi*r)");
  sp->add_option("--out", out, "Output directory");

  auto* st = app.add_subcommand("stability", "Sweep the discrete stability classification over a (K, h) grid");
  double k_min = 1.0, k_max = 1.0, h_min = 0.1, h_max = 0.1;
  std::size_t k_steps = 1, h_steps = 1;
  st->add_option("--k-min", k_min, "Smallest curvature")->capture_default_str();
  st->add_option("--k-max", k_max, "Largest curvature")->capture_default_str();
  st->add_option("--k-steps", k_steps, "Number of curvature values")->capture_default_str();
  st->add_option("--h-min", h_min, "Smallest step size")->capture_default_str();
  st->add_option("--h-max", h_max, "Largest step size")->capture_default_str();
  st->add_option("--h-steps", h_steps, "Number of step sizes")->capture_default_str();
  st->add_option("--out", out, "Output directory");

  auto* ek = app.add_subcommand("estimate-k", "Estimate curvature from a LEDR CSV");
  std::string input;
  double ek_h = 0.0;
  ek->add_option("input", input, "LEDR CSV (t,xi0,...)")->required();
  ek->add_option("--h", ek_h, "Step size (default: inferred from the t column)");
  ek->add_option("--out", out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (*sim) {
    ledr_config* cfg = nullptr;
    ledr_status s = ledr_config_load(config_path.c_str(), &cfg);
    if (s != LEDR_OK) return report(s, {});
    if (s == LEDR_OK && sim_h) s = ledr_config_set_h(cfg, *sim_h);
    if (s == LEDR_OK && sim_steps) s = ledr_config_set_steps(cfg, *sim_steps);
    if (s == LEDR_OK && sim_seed) s = ledr_config_set_seed(cfg, *sim_seed);
    const std::string dir = resolve_out(out, ledr_config_out(cfg));
    if (s == LEDR_OK) s = ledr_cmd_simulate(cfg, dir.c_str());
    ledr_config_free(cfg);
    return report(s, dir);
  }
  if (*sp) {
    const std::string dir = resolve_out(out);
    return report(ledr_cmd_sphere_plane(sp_r, sp_h, sp_horizon, dir.c_str()), dir);
  }
  if (*st) {
    const std::string dir = resolve_out(out);
    return report(ledr_cmd_stability(k_min, k_max, k_steps, h_min, h_max, h_steps, dir.c_str()), dir);
  }
  const std::string dir = resolve_out(out);
  return report(ledr_cmd_estimate_k(input.c_str(), ek_h, dir.c_str()), dir);
}
