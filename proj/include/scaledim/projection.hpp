#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scaledim/point_cloud.hpp"

namespace scaledim {

// Incrementally built orthonormal basis (modified Gram-Schmidt, two passes).
// A candidate whose residual falls under rel_tol times the largest input norm
// seen so far is rejected, so the basis always spans the actual span of the
// accepted inputs.
class OrthoBasis {
 public:
  explicit OrthoBasis(std::size_t dim, double rel_tol = 1e-10)
      : dim_(dim), rel_tol_(rel_tol) {}

  // returns true if the vector enlarged the span
  bool add(std::span<const double> v);

  std::size_t rank() const { return rank_; }

  struct Split {
    double parallel_norm;  // norm of the projection onto the span
    double residual_norm;  // norm of the rejection
  };
  Split split(std::span<const double> v) const;

  // angle between v and its orthogonal projection onto the span, in [0, pi/2]
  double angle_to(std::span<const double> v) const;

 private:
  std::size_t dim_;
  double rel_tol_;
  std::size_t rank_ = 0;
  double max_input_norm_ = 0.0;
  std::vector<double> q_;  // rank_ orthonormal rows, flat
};

// theta for center/base/apex given as point ids: the angle between
// x_apex - x_center and its projection onto span{x_b - x_center}.
double angle(const PointCloud& cloud, std::uint32_t center,
             std::span<const std::uint32_t> base, std::uint32_t apex);

}  // namespace scaledim
