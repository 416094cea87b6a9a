#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace scaledim {

// n observations in d-dimensional space, row-major.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(std::size_t n, std::size_t d)
      : n_(n), d_(d), data_(n * d, 0.0) {}
  PointCloud(std::size_t n, std::size_t d, std::vector<double> data);

  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t n() const { return n_; }
  std::size_t dim() const { return d_; }

  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * d_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * d_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * d_, d_};
  }
  std::span<double> row(std::size_t i) { return {data_.data() + i * d_, d_}; }

  const std::vector<double>& data() const { return data_; }

  // n >= 3, d >= 2, every coordinate finite; throws ParameterError otherwise
  void validate() const;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> data_;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);

}  // namespace scaledim
