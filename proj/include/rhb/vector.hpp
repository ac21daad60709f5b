#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace rhb {

// Dense real vector holding iterates, velocities and gradients.
// Dimension is fixed at construction and is always >= 1.
class DenseVector {
 public:
  explicit DenseVector(std::size_t dim) : data_(dim, 0.0) { check_dim(); }
  explicit DenseVector(std::vector<double> values) : data_(std::move(values)) { check_dim(); }
  DenseVector(std::initializer_list<double> values) : data_(values) { check_dim(); }

  std::size_t dim() const { return data_.size(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> span() { return data_; }
  std::span<const double> span() const { return data_; }
  operator std::span<double>() { return data_; }
  operator std::span<const double>() const { return data_; }

  const std::vector<double>& values() const { return data_; }

  bool all_finite() const;
  void fill(double value);

  friend bool operator==(const DenseVector&, const DenseVector&) = default;

 private:
  void check_dim() const {
    if (data_.empty()) throw std::invalid_argument("DenseVector: dimension must be >= 1");
  }

  std::vector<double> data_;
};

double vector_norm(const DenseVector& x);

// x̄_{k+1} from x̄_k = mean(x_0..x_{k-1}) and the new iterate x_k.
DenseVector running_average_update(const DenseVector& xbar, const DenseVector& x, std::size_t k);

}  // namespace rhb
