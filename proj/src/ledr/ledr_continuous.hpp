// SPDX-License-Identifier: Apache-2.0
//
// Continuous latent-error dynamics along a model trajectory.
//
// With D/dt the true covariant derivative along the model curve x(t), T = ẋ
// and Γ the true Christoffel symbols at x(t):
//
//   (Dξ/dt)^i   = ξ̇^i + Γ^i_{jk} T^j ξ^k
//   (D²ξ/dt²)^i = ξ̈^i + C^i(ξ, ξ̇)
//   C^i = ∂_l Γ^i_{jk} T^l T^j ξ^k + Γ^i_{jk} Ṫ^j ξ^k + 2 Γ^i_{jk} T^j ξ̇^k
//         + Γ^i_{jk} T^j Γ^k_{ab} T^a ξ^b
//
// where Ṫ = −Γ^m(T, T) because the model curve is a model geodesic. The linear
// deviation equation D²ξ/dt² + R^t(T, ξ)T = F_ΔΓ then reads
//
//   ξ̈ = −C(ξ, ξ̇) − R^t(T, ξ)T + F_ΔΓ(T),   F_ΔΓ^i = −ΔΓ^i_{jk} T^j T^k.
//
// Terms quadratic in ξ and of order ‖ξ‖‖ΔΓ‖ are not modelled.
#pragma once

#include <cstddef>
#include <vector>

#include "ledr/geodesic.hpp"

namespace ledr {

struct LedrState {
  double t = 0.0;
  Vector xi;
  Vector xi_dot;
};

enum class LedrSource { ode_integrated, trajectory_difference, closed_form };

const char* to_string(LedrSource source) noexcept;

struct LedrSolution {
  double h = 0.0;
  std::vector<LedrState> states;
  LedrSource source = LedrSource::ode_integrated;

  std::size_t size() const noexcept { return states.size(); }
  int dim() const noexcept { return states.empty() ? 0 : static_cast<int>(states.front().xi.size()); }
  // Samples of one component of ξ.
  std::vector<double> component(int i) const;
};

// C(ξ, ξ̇) from the expansion above.
Vector covariant_correction(const Tensor3& gamma, const Tensor4& dgamma, const Vector& T, const Vector& T_dot,
                            const Vector& xi, const Vector& xi_dot);

Vector ledr_rhs(const ConnectionField& true_conn, const ConnectionField& model_conn, const ChartPoint& x,
                const TangentVector& T, const Vector& xi, const Vector& xi_dot);

// Same acceleration regrouped around the model curvature:
//   ξ̈ = −C − R^m(T, ξ)T − ΔR(T, ξ)T + F_ΔΓ,   ΔR = R^t − R^m.
Vector general_deviation_rhs(const ConnectionField& true_conn, const ConnectionField& model_conn,
                             const ChartPoint& x, const TangentVector& T, const Vector& xi,
                             const Vector& xi_dot);

// RK4 on (ξ, ξ̇) over the grid of `model_traj`; the model state between
// samples comes from cubic interpolation through four neighbouring samples.
LedrSolution integrate_ledr(const ConnectionField& true_conn, const ConnectionField& model_conn,
                            const Trajectory& model_traj, const Vector& xi0, const Vector& xi_dot0);

// ξ_k = x_{t,k} − x_{m,k}, ξ̇_k = v_{t,k} − v_{m,k}.
LedrSolution ledr_from_trajectories(const Trajectory& true_traj, const Trajectory& model_traj);

// Solution of ξ̈ + Kξ = 0:
//   K > 0: A sin(√K t) + B cos(√K t)
//   K = 0: B + A t
//   K < 0: A sinh(√−K t) + B cosh(√−K t)
Vector scalar_jacobi_closed_form(double K, const Vector& A, const Vector& B, double t);

// Closed-form samples on t_k = k·h, k = 0..steps, matching ξ(0) = xi0 and
// ξ̇(0) = xi_dot0.
LedrSolution scalar_jacobi_solution(double K, const Vector& xi0, const Vector& xi_dot0, double h,
                                    std::size_t steps);

}  // namespace ledr
