// SPDX-License-Identifier: Apache-2.0
//
// Affine connections on a single coordinate chart and the curvature objects
// derived from them.
//
// Index conventions used throughout the library:
//   Christoffel symbols   Gamma(i, j, k)      = Γ^i_{jk}, symmetric in (j, k)
//   Christoffel partials  dGamma(l, i, j, k)  = ∂_l Γ^i_{jk}
//   Curvature             R(i, j, l, m)       = R^i_{jlm}
//       = ∂_l Γ^i_{mj} − ∂_m Γ^i_{lj} + Γ^i_{lp} Γ^p_{mj} − Γ^i_{mp} Γ^p_{lj}
// so that R(X, Y)Z has components R^i_{jlm} Z^j X^l Y^m. The Jacobi operator
// contracts (T, ξ, T) into slots (j, l, m), which yields +K ξ for unit T ⟂ ξ on a
// space of constant sectional curvature K.
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ledr/tensor.hpp"

namespace ledr {

class ChartPoint {
 public:
  explicit ChartPoint(Vector coords);
  int dim() const noexcept { return static_cast<int>(coords_.size()); }
  const Vector& coords() const noexcept { return coords_; }
  double operator[](int i) const { return coords_[i]; }

  friend bool operator==(const ChartPoint& a, const ChartPoint& b) {
    return a.coords_.size() == b.coords_.size() && a.coords_ == b.coords_;
  }

 private:
  Vector coords_;
};

class TangentVector {
 public:
  TangentVector(ChartPoint base, Vector components);
  int dim() const noexcept { return base_.dim(); }
  const ChartPoint& base() const noexcept { return base_; }
  const Vector& components() const noexcept { return components_; }
  double operator[](int i) const { return components_[i]; }

 private:
  ChartPoint base_;
  Vector components_;
};

using ChristoffelEvaluator = std::function<Tensor3(const Vector&)>;
using ChristoffelPartialsEvaluator = std::function<Tensor4(const Vector&)>;
using ChartDomain = std::function<bool(const Vector&)>;

class ConnectionField {
 public:
  // `partials` is optional; without it, ∂Γ is taken by central differences.
  // `domain` reports whether a point lies in the chart's valid band (everywhere
  // when empty).
  ConnectionField(int dim, ChristoffelEvaluator gamma,
                  std::optional<ChristoffelPartialsEvaluator> partials = std::nullopt,
                  ChartDomain domain = {}, std::string tag = "user");

  static ConnectionField flat(int dim);

  int dim() const noexcept { return dim_; }
  const std::string& tag() const noexcept { return tag_; }
  bool has_closed_form_partials() const noexcept { return partials_.has_value(); }
  bool is_flat() const noexcept { return flat_; }
  bool contains(const Vector& x) const { return !domain_ || domain_(x); }

  // Throws dimension_mismatch, non_finite, or invalid_argument when the
  // evaluator breaks torsion-freeness.
  Tensor3 christoffel(const ChartPoint& x) const;
  Tensor4 christoffel_partials(const ChartPoint& x) const;

  // Finite-difference step used for points without closed-form partials.
  static double fd_step(const Vector& x);

 private:
  int dim_;
  ChristoffelEvaluator gamma_;
  std::optional<ChristoffelPartialsEvaluator> partials_;
  ChartDomain domain_;
  std::string tag_;
  bool flat_ = false;
};

using MetricEvaluator = std::function<Matrix(const Vector&)>;

class MetricField {
 public:
  MetricField(int dim, MetricEvaluator g);
  static MetricField euclidean(int dim);

  int dim() const noexcept { return dim_; }
  // Throws when the evaluated matrix is not symmetric positive-definite.
  Matrix at(const ChartPoint& x) const;
  double inner(const ChartPoint& x, const Vector& u, const Vector& v) const;
  double norm(const ChartPoint& x, const Vector& u) const;

 private:
  int dim_;
  MetricEvaluator g_;
};

class CurvatureValue {
 public:
  CurvatureValue(ChartPoint base, Tensor4 components);
  const ChartPoint& base() const noexcept { return base_; }
  const Tensor4& components() const noexcept { return components_; }
  double operator()(int i, int j, int l, int m) const { return components_(i, j, l, m); }

 private:
  ChartPoint base_;
  Tensor4 components_;
};

// Riemann tensor from Christoffel symbols and their partial derivatives.
Tensor4 riemann_from(const Tensor3& gamma, const Tensor4& dgamma);

CurvatureValue curvature_at(const ConnectionField& conn, const ChartPoint& x);

// out^i = R^i_{jlm} T^j ξ^l T^m, i.e. R(ξ, T)T.
Vector jacobi_contract(const Tensor4& R, const Vector& T, const Vector& xi);
TangentVector jacobi_apply(const CurvatureValue& Rv, const TangentVector& T,
                           const TangentVector& xi);

double sectional_curvature(const MetricField& g, const CurvatureValue& Rv, const TangentVector& u,
                           const TangentVector& v);

Tensor3 connection_mismatch(const ConnectionField& true_conn, const ConnectionField& model_conn,
                            const ChartPoint& x);

// F^i = −ΔΓ^i_{jk} T^j T^k
TangentVector forcing_term(const Tensor3& delta_gamma, const TangentVector& T);

}  // namespace ledr
