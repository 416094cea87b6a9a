#include "scaledim/point_cloud.hpp"

#include <cmath>

#include "scaledim/errors.hpp"

namespace scaledim {

PointCloud::PointCloud(std::size_t n, std::size_t d, std::vector<double> data)
    : n_(n), d_(d), data_(std::move(data)) {
  if (data_.size() != n_ * d_) {
    throw InternalError("point cloud buffer size does not match n*d");
  }
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  std::size_t n = rows.size();
  std::size_t d = n == 0 ? 0 : rows.front().size();
  std::vector<double> data;
  data.reserve(n * d);
  for (const auto& r : rows) {
    if (r.size() != d) {
      throw ParameterError("point cloud rows have inconsistent width");
    }
    data.insert(data.end(), r.begin(), r.end());
  }
  return PointCloud(n, d, std::move(data));
}

void PointCloud::validate() const {
  if (n_ < 3) {
    throw ParameterError("point cloud needs at least 3 observations, got " +
                         std::to_string(n_));
  }
  if (d_ < 2) {
    throw ParameterError("point cloud needs at least 2 coordinates, got " +
                         std::to_string(d_));
  }
  for (double v : data_) {
    if (!std::isfinite(v)) {
      throw ParameterError("point cloud contains a non-finite coordinate");
    }
  }
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    double diff = a[j] - b[j];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

}  // namespace scaledim
