// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace ledr {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Dense rank-3 array over an n-dimensional chart, index order (i, j, k).
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}

  int dim() const noexcept { return dim_; }
  double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

  // out^i = T^i_{jk} a^j b^k
  Vector contract(const Vector& a, const Vector& b) const {
    Vector out = Vector::Zero(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        if (a[j] == 0.0) continue;
        for (int k = 0; k < dim_; ++k) out[i] += (*this)(i, j, k) * a[j] * b[k];
      }
    return out;
  }

 private:
  std::size_t index(int i, int j, int k) const noexcept {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }
  int dim_ = 0;
  std::vector<double> data_;
};

// Dense rank-4 array, index order (a, b, c, d).
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int dim)
      : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}

  int dim() const noexcept { return dim_; }
  double& operator()(int a, int b, int c, int d) { return data_[index(a, b, c, d)]; }
  double operator()(int a, int b, int c, int d) const { return data_[index(a, b, c, d)]; }
  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

 private:
  std::size_t index(int a, int b, int c, int d) const noexcept {
    return ((static_cast<std::size_t>(a) * dim_ + b) * dim_ + c) * dim_ + d;
  }
  int dim_ = 0;
  std::vector<double> data_;
};

inline Tensor3 operator-(const Tensor3& lhs, const Tensor3& rhs) {
  Tensor3 out(lhs.dim());
  for (std::size_t n = 0; n < out.data().size(); ++n) out.data()[n] = lhs.data()[n] - rhs.data()[n];
  return out;
}

inline Tensor4 operator-(const Tensor4& lhs, const Tensor4& rhs) {
  Tensor4 out(lhs.dim());
  for (std::size_t n = 0; n < out.data().size(); ++n) out.data()[n] = lhs.data()[n] - rhs.data()[n];
  return out;
}

}  // namespace ledr
