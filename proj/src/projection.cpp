#include "scaledim/projection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scaledim/errors.hpp"

namespace scaledim {

namespace {

double norm(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

double dot(const double* a, const double* b, std::size_t d) {
  double acc = 0.0;
  for (std::size_t j = 0; j < d; ++j) acc += a[j] * b[j];
  return acc;
}

}  // namespace

bool OrthoBasis::add(std::span<const double> v) {
  max_input_norm_ = std::max(max_input_norm_, norm(v));
  std::vector<double> r(v.begin(), v.end());
  // two MGS sweeps; the second removes the rounding left by the first
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t l = 0; l < rank_; ++l) {
      const double* q = q_.data() + l * dim_;
      double c = dot(r.data(), q, dim_);
      for (std::size_t j = 0; j < dim_; ++j) r[j] -= c * q[j];
    }
  }
  double rn = norm(r);
  if (rn <= rel_tol_ * max_input_norm_) {
    return false;  // inside the current span under tolerance
  }
  for (double& x : r) x /= rn;
  q_.insert(q_.end(), r.begin(), r.end());
  ++rank_;
  return true;
}

OrthoBasis::Split OrthoBasis::split(std::span<const double> v) const {
  std::vector<double> r(v.begin(), v.end());
  std::vector<double> p(dim_, 0.0);
  for (std::size_t l = 0; l < rank_; ++l) {
    const double* q = q_.data() + l * dim_;
    double c = dot(r.data(), q, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      r[j] -= c * q[j];
      p[j] += c * q[j];
    }
  }
  return {norm(p), norm(r)};
}

double OrthoBasis::angle_to(std::span<const double> v) const {
  Split s = split(v);
  // atan2 of the two component norms is well conditioned at both ends of
  // [0, pi/2], unlike acos of the ratio
  return std::atan2(s.residual_norm, s.parallel_norm);
}

double angle(const PointCloud& cloud, std::uint32_t center,
             std::span<const std::uint32_t> base, std::uint32_t apex) {
  const std::size_t d = cloud.dim();
  if (apex == center) {
    throw DegenerateAngleError("apex coincides with the center id");
  }
  for (std::size_t a = 0; a < base.size(); ++a) {
    if (base[a] == center || base[a] == apex) {
      throw ParameterError("base ids must differ from center and apex");
    }
    for (std::size_t b = a + 1; b < base.size(); ++b) {
      if (base[a] == base[b]) {
        throw ParameterError("base ids must be distinct");
      }
    }
  }

  auto xc = cloud.row(center);
  std::vector<double> v(d);
  auto xa = cloud.row(apex);
  double vnorm = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    v[j] = xa[j] - xc[j];
    vnorm += v[j] * v[j];
  }
  if (vnorm == 0.0) {
    throw DegenerateAngleError("apex point coincides with the center point");
  }

  OrthoBasis basis(d);
  std::vector<double> b(d);
  for (std::uint32_t id : base) {
    auto xb = cloud.row(id);
    for (std::size_t j = 0; j < d; ++j) b[j] = xb[j] - xc[j];
    basis.add(b);
  }
  if (basis.rank() == 0) {
    throw DegenerateAngleError("all base vectors are zero");
  }
  return basis.angle_to(v);
}

}  // namespace scaledim
