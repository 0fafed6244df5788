// SPDX-License-Identifier: Apache-2.0
#include "ledr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>

#include "ledr/error.hpp"

namespace ledr {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::non_finite: return "non_finite";
    case ErrorKind::chart_exit: return "chart_exit";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::no_oracle: return "no_oracle";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::no_oscillation: return "no_oscillation";
    case ErrorKind::validation: return "validation";
    case ErrorKind::io: return "io";
    case ErrorKind::schema: return "schema";
  }
  return "unknown";
}

namespace {

void require_dim(int expected, int actual, const char* what) {
  if (expected != actual) {
    std::ostringstream os;
    os << what << ": expected dimension " << expected << ", got " << actual;
    throw Error(ErrorKind::dimension_mismatch, os.str());
  }
}

bool all_finite(const std::vector<double>& values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

ChartPoint::ChartPoint(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 1) throw Error(ErrorKind::invalid_argument, "chart point must have dimension >= 1");
  if (!coords_.allFinite()) throw Error(ErrorKind::non_finite, "chart point has non-finite coordinates");
}

TangentVector::TangentVector(ChartPoint base, Vector components)
    : base_(std::move(base)), components_(std::move(components)) {
  require_dim(base_.dim(), static_cast<int>(components_.size()), "tangent vector");
}

ConnectionField::ConnectionField(int dim, ChristoffelEvaluator gamma,
                                 std::optional<ChristoffelPartialsEvaluator> partials,
                                 ChartDomain domain, std::string tag)
    : dim_(dim),
      gamma_(std::move(gamma)),
      partials_(std::move(partials)),
      domain_(std::move(domain)),
      tag_(std::move(tag)) {
  if (dim_ < 1) throw Error(ErrorKind::invalid_argument, "connection dimension must be >= 1");
  if (!gamma_) throw Error(ErrorKind::invalid_argument, "connection requires a Christoffel evaluator");
}

ConnectionField ConnectionField::flat(int dim) {
  ConnectionField conn(
      dim, [dim](const Vector&) { return Tensor3(dim); },
      [dim](const Vector&) { return Tensor4(dim); }, {}, "flat");
  conn.flat_ = true;
  return conn;
}

double ConnectionField::fd_step(const Vector& x) {
  return std::max(1e-5, 1e-5 * x.cwiseAbs().maxCoeff());
}

Tensor3 ConnectionField::christoffel(const ChartPoint& x) const {
  require_dim(dim_, x.dim(), "christoffel");
  Tensor3 gamma = gamma_(x.coords());
  require_dim(dim_, gamma.dim(), "christoffel evaluator output");
  if (!all_finite(gamma.data()))
    throw Error(ErrorKind::non_finite, "non-finite Christoffel symbol in connection '" + tag_ + "'");
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = j + 1; k < dim_; ++k) {
        const double a = gamma(i, j, k);
        const double b = gamma(i, k, j);
        if (std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}))
          throw Error(ErrorKind::invalid_argument,
                      "connection '" + tag_ + "' is not torsion-free (Gamma not symmetric in j,k)");
      }
  return gamma;
}

Tensor4 ConnectionField::christoffel_partials(const ChartPoint& x) const {
  require_dim(dim_, x.dim(), "christoffel partials");
  Tensor4 d(dim_);
  if (partials_) {
    d = (*partials_)(x.coords());
    require_dim(dim_, d.dim(), "christoffel partials evaluator output");
  } else {
    const double delta = fd_step(x.coords());
    for (int l = 0; l < dim_; ++l) {
      Vector xp = x.coords();
      Vector xm = x.coords();
      xp[l] += delta;
      xm[l] -= delta;
      const Tensor3 gp = gamma_(xp);
      const Tensor3 gm = gamma_(xm);
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
          for (int k = 0; k < dim_; ++k) d(l, i, j, k) = (gp(i, j, k) - gm(i, j, k)) / (2.0 * delta);
    }
  }
  if (!all_finite(d.data()))
    throw Error(ErrorKind::non_finite, "non-finite Christoffel derivative in connection '" + tag_ + "'");
  return d;
}

MetricField::MetricField(int dim, MetricEvaluator g) : dim_(dim), g_(std::move(g)) {
  if (dim_ < 1) throw Error(ErrorKind::invalid_argument, "metric dimension must be >= 1");
}

MetricField MetricField::euclidean(int dim) {
  return MetricField(dim, [dim](const Vector&) { return Matrix::Identity(dim, dim); });
}

Matrix MetricField::at(const ChartPoint& x) const {
  require_dim(dim_, x.dim(), "metric");
  Matrix g = g_(x.coords());
  if (g.rows() != dim_ || g.cols() != dim_)
    throw Error(ErrorKind::dimension_mismatch, "metric evaluator returned wrong shape");
  if (!g.allFinite()) throw Error(ErrorKind::non_finite, "non-finite metric");
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff()))
    throw Error(ErrorKind::invalid_argument, "metric is not symmetric");
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::invalid_argument, "metric is not positive-definite");
  return g;
}

double MetricField::inner(const ChartPoint& x, const Vector& u, const Vector& v) const {
  return u.dot(at(x) * v);
}

double MetricField::norm(const ChartPoint& x, const Vector& u) const {
  return std::sqrt(inner(x, u, u));
}

CurvatureValue::CurvatureValue(ChartPoint base, Tensor4 components)
    : base_(std::move(base)), components_(std::move(components)) {
  require_dim(base_.dim(), components_.dim(), "curvature value");
}

Tensor4 riemann_from(const Tensor3& gamma, const Tensor4& dgamma) {
  const int n = gamma.dim();
  Tensor4 R(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) {
          double quad = 0.0;
          for (int p = 0; p < n; ++p)
            quad += gamma(i, l, p) * gamma(p, m, j) - gamma(i, m, p) * gamma(p, l, j);
          R(i, j, l, m) = (dgamma(l, i, m, j) - dgamma(m, i, l, j)) + quad;
        }
  return R;
}

CurvatureValue curvature_at(const ConnectionField& conn, const ChartPoint& x) {
  if (conn.is_flat()) {
    require_dim(conn.dim(), x.dim(), "curvature");
    return CurvatureValue(x, Tensor4(conn.dim()));
  }
  return CurvatureValue(x, riemann_from(conn.christoffel(x), conn.christoffel_partials(x)));
}

Vector jacobi_contract(const Tensor4& R, const Vector& T, const Vector& xi) {
  const int n = R.dim();
  Vector out = Vector::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) out[i] += R(i, j, l, m) * T[j] * xi[l] * T[m];
  return out;
}

TangentVector jacobi_apply(const CurvatureValue& Rv, const TangentVector& T, const TangentVector& xi) {
  if (!(T.base() == Rv.base()) || !(xi.base() == Rv.base()))
    throw Error(ErrorKind::invalid_argument, "jacobi_apply: arguments do not share a base point");
  return TangentVector(Rv.base(), jacobi_contract(Rv.components(), T.components(), xi.components()));
}

double sectional_curvature(const MetricField& g, const CurvatureValue& Rv, const TangentVector& u,
                           const TangentVector& v) {
  if (!(u.base() == Rv.base()) || !(v.base() == Rv.base()))
    throw Error(ErrorKind::invalid_argument, "sectional_curvature: arguments do not share a base point");
  const Matrix G = g.at(Rv.base());
  const Vector& uu = u.components();
  const Vector& vv = v.components();
  const double uu2 = uu.dot(G * uu);
  const double vv2 = vv.dot(G * vv);
  const double uv = uu.dot(G * vv);
  const double denom = uu2 * vv2 - uv * uv;
  if (!(denom >= 1e-12 * uu2 * vv2) || denom <= 0.0)
    throw Error(ErrorKind::degenerate, "sectional_curvature: degenerate plane (u, v linearly dependent)");
  // R(u, v)v
  const Vector Ruvv = jacobi_contract(Rv.components(), vv, uu);
  return Ruvv.dot(G * uu) / denom;
}

Tensor3 connection_mismatch(const ConnectionField& true_conn, const ConnectionField& model_conn,
                            const ChartPoint& x) {
  require_dim(true_conn.dim(), model_conn.dim(), "connection_mismatch");
  return true_conn.christoffel(x) - model_conn.christoffel(x);
}

TangentVector forcing_term(const Tensor3& delta_gamma, const TangentVector& T) {
  require_dim(delta_gamma.dim(), T.dim(), "forcing_term");
  return TangentVector(T.base(), -delta_gamma.contract(T.components(), T.components()));
}

}  // namespace ledr
