// SPDX-License-Identifier: Apache-2.0
//
// Sampled latent-error dynamics on a uniform grid t_k = k·h.
//
// The discrete evolution replaces D²ξ/dt² by the central second difference
// along the model samples:
//
//   ξ_{k+1} = 2ξ_k − ξ_{k−1} − h² R^t_k(T_{m,k}, ξ_k)T_{m,k} + h² F_ΔΓ,k(T_{m,k})
//
// For constant sectional curvature K this is ξ_{k+1} − (2 − λ)ξ_k + ξ_{k−1} = 0
// with λ = h²K and characteristic roots μ± = 1 − λ/2 ± √(λ²/4 − λ). The roots
// lie on the unit circle exactly when 0 < λ < 4, where the per-step phase is
// arccos(1 − λ/2). Frequencies are stored per unit time: ω_d = arccos(1 − λ/2)/h.
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "ledr/geodesic.hpp"
#include "ledr/ledr_continuous.hpp"

namespace ledr {

enum class SeriesOrigin { recurrence, measured, trajectory_difference };

const char* to_string(SeriesOrigin origin) noexcept;

struct DiscreteLedrSeries {
  double h = 0.0;
  std::vector<Vector> xi;
  SeriesOrigin origin = SeriesOrigin::measured;

  std::size_t size() const noexcept { return xi.size(); }
  int dim() const noexcept { return xi.empty() ? 0 : static_cast<int>(xi.front().size()); }
  std::vector<double> component(int i) const;
  std::vector<double> norms() const;
};

DiscreteLedrSeries to_discrete(const LedrSolution& solution);

// (ξ_{k+1} − ξ_{k−1}) / 2h
Vector discrete_first_diff(const DiscreteLedrSeries& series, std::size_t k);
// (ξ_{k+1} − 2ξ_k + ξ_{k−1}) / h²
Vector discrete_second_diff(const DiscreteLedrSeries& series, std::size_t k);

Vector recurrence_step(const Vector& xi_k, const Vector& xi_km1, double h, const ConnectionField& true_conn,
                       const ConnectionField& model_conn, const ChartPoint& x_mk, const TangentVector& T_mk);

struct ConstantCurvature {
  double k = 0.0;
};

// k[j] drives the step that produces ξ_{j+1}.
struct PiecewiseCurvature {
  std::vector<double> k;
};

// Curvature tensor of `true_conn` evaluated along the model samples, with
// central-difference velocities. When `model_conn` is set the mismatch forcing
// is included; otherwise the flat-model form (no forcing) is used. Pointers
// must outlive the call.
struct TensorCurvature {
  const ConnectionField* true_conn = nullptr;
  const Trajectory* model_traj = nullptr;
  const ConnectionField* model_conn = nullptr;
};

using CurvatureSource = std::variant<ConstantCurvature, PiecewiseCurvature, TensorCurvature>;

// Returns steps + 2 samples starting with (ξ0, ξ1). Throws DivergenceError
// once ‖ξ‖ exceeds 1e100.
DiscreteLedrSeries run_recurrence(const Vector& xi0, const Vector& xi1, std::size_t steps, double h,
                                  const CurvatureSource& source);

enum class Regime { oscillatory, degenerate_boundary, divergent_positive, divergent_negative, flat_drift };

const char* to_string(Regime regime) noexcept;
std::optional<Regime> regime_from_string(const std::string& name);

using RootPair = std::array<std::complex<double>, 2>;

struct StabilityReport {
  double lambda = 0.0;
  RootPair roots{};
  Regime regime = Regime::flat_drift;
  std::optional<double> omega_d;

  double max_root_modulus() const { return std::max(std::abs(roots[0]), std::abs(roots[1])); }
};

// {μ+, μ−}; the smaller-magnitude real root is taken as the reciprocal of the
// larger so that μ+μ− = 1 holds to rounding for every λ.
RootPair characteristic_roots(double lambda);

StabilityReport classify_stability(double K, double h);

// Per-unit-time frequency; requires 0 < h²K < 4. Per-step phase is ω_d·h.
double discrete_frequency(double K, double h);

struct CurvatureEstimate {
  double h = 0.0;
  std::vector<double> k_values;  // NaN where invalid
  std::vector<bool> valid;
};

// K_k = ⟨2ξ_k − ξ_{k+1} − ξ_{k−1}, ξ_k⟩ / (h² |ξ_k|²); the endpoints and every
// step with |ξ_k| < tol·max_j |ξ_j| are invalid.
CurvatureEstimate estimate_curvature(const DiscreteLedrSeries& series, double tol = 1e-6);

struct EstimateSummary {
  std::size_t n_valid = 0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double iqr = 0.0;
};

EstimateSummary summarize(const CurvatureEstimate& estimate);

struct ProbeOptions {
  std::optional<std::size_t> window;  // default: one discrete period
  double delta = 0.1;
  double kappa0 = 0.0;  // declared persistent mismatch; 0 disables the claim
};

struct MismatchProbeReport {
  std::vector<double> mismatch_integral;  // h Σ_{j<k} |K_t,j − K_m,j|
  std::vector<double> norms;
  std::size_t window = 0;
  double early_amplitude = 0.0;
  double min_window_sup = 0.0;
  std::optional<double> c_hat;
  std::optional<bool> non_decay;  // empty: no claim made
  bool obstruction_violated = false;
};

MismatchProbeReport mismatch_lower_bound_probe(const DiscreteLedrSeries& series, const std::vector<double>& k_true,
                                               const std::vector<double>& k_model,
                                               const ProbeOptions& options = {});

}  // namespace ledr
