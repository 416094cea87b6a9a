// Independent reference implementations used as test oracles. These must not
// share code with the library paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <tuple>
#include <vector>

#include "scaledim/point_cloud.hpp"
#include "scaledim/rng.hpp"

namespace oracle {

inline double distance(const scaledim::PointCloud& cloud, std::size_t i,
                       std::size_t j) {
  double acc = 0.0;
  for (std::size_t c = 0; c < cloud.dim(); ++c) {
    double diff = cloud(i, c) - cloud(j, c);
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

// all neighbors of `center` ordered by (|s - d|, d, id) via one full sort
inline std::vector<std::uint32_t> sphere_neighbors_exhaustive(
    const scaledim::PointCloud& cloud, std::uint32_t center, double s,
    std::size_t count, bool skip_coincident = false) {
  std::vector<std::tuple<double, double, std::uint32_t>> all;
  for (std::uint32_t j = 0; j < cloud.n(); ++j) {
    if (j == center) continue;
    double d = distance(cloud, center, j);
    if (skip_coincident && d == 0.0) continue;
    all.emplace_back(std::fabs(s - d), d, j);
  }
  std::sort(all.begin(), all.end());
  std::vector<std::uint32_t> ids;
  for (std::size_t r = 0; r < count && r < all.size(); ++r) {
    ids.push_back(std::get<2>(all[r]));
  }
  return ids;
}

// classical Gram-Schmidt (single pass, original-vector projections) followed
// by acos of the projection/vector norm ratio; a deliberately different
// arithmetic route than the library's
inline double angle_classical_gs(const std::vector<std::vector<double>>& base,
                                 const std::vector<double>& v) {
  std::size_t d = v.size();
  std::vector<std::vector<double>> q;
  for (const auto& b : base) {
    std::vector<double> u = b;
    for (const auto& ql : q) {
      double c = 0.0;
      for (std::size_t j = 0; j < d; ++j) c += b[j] * ql[j];
      for (std::size_t j = 0; j < d; ++j) u[j] -= c * ql[j];
    }
    double norm = 0.0;
    for (double x : u) norm += x * x;
    norm = std::sqrt(norm);
    double bnorm = 0.0;
    for (double x : b) bnorm += x * x;
    bnorm = std::sqrt(bnorm);
    if (norm > 1e-10 * std::max(1.0, bnorm)) {
      for (double& x : u) x /= norm;
      q.push_back(u);
    }
  }
  std::vector<double> proj(d, 0.0);
  for (const auto& ql : q) {
    double c = 0.0;
    for (std::size_t j = 0; j < d; ++j) c += v[j] * ql[j];
    for (std::size_t j = 0; j < d; ++j) proj[j] += c * ql[j];
  }
  double pnorm = 0.0;
  double vnorm = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    pnorm += proj[j] * proj[j];
    vnorm += v[j] * v[j];
  }
  double ratio = std::sqrt(pnorm) / std::sqrt(vnorm);
  ratio = std::clamp(ratio, 0.0, 1.0);
  return std::acos(ratio);
}

// sorted multiset of all n(n-1)/2 pairwise distances, zeros included
inline std::vector<double> pairwise_distances(const scaledim::PointCloud& cloud) {
  std::vector<double> out;
  for (std::size_t i = 0; i < cloud.n(); ++i) {
    for (std::size_t j = i + 1; j < cloud.n(); ++j) {
      out.push_back(distance(cloud, i, j));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Kolmogorov-Smirnov distance of a sample from the uniform law on [0, hi]
inline double ks_uniform(std::vector<double> sample, double hi) {
  std::sort(sample.begin(), sample.end());
  double n = static_cast<double>(sample.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double cdf = sample[i] / hi;
    double lo_step = static_cast<double>(i) / n;
    double hi_step = static_cast<double>(i + 1) / n;
    dist = std::max({dist, std::fabs(cdf - lo_step), std::fabs(cdf - hi_step)});
  }
  return dist;
}

// random rotation: Gram-Schmidt of a Gaussian matrix, det sign fixed
inline std::vector<std::vector<double>> random_rotation(std::size_t d,
                                                        std::uint64_t seed) {
  scaledim::Rng rng(seed);
  std::vector<std::vector<double>> m(d, std::vector<double>(d));
  for (auto& row : m) {
    for (double& x : row) x = rng.normal();
  }
  // orthonormalize rows
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t l = 0; l < i; ++l) {
      double c = 0.0;
      for (std::size_t j = 0; j < d; ++j) c += m[i][j] * m[l][j];
      for (std::size_t j = 0; j < d; ++j) m[i][j] -= c * m[l][j];
    }
    double norm = 0.0;
    for (double x : m[i]) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : m[i]) x /= norm;
  }
  return m;
}

inline scaledim::PointCloud transform(const scaledim::PointCloud& cloud,
                                      const std::vector<std::vector<double>>& rot,
                                      const std::vector<double>& shift,
                                      double scale = 1.0) {
  scaledim::PointCloud out(cloud.n(), cloud.dim());
  for (std::size_t i = 0; i < cloud.n(); ++i) {
    for (std::size_t r = 0; r < cloud.dim(); ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < cloud.dim(); ++c) {
        acc += rot[r][c] * cloud(i, c);
      }
      out(i, r) = scale * acc + shift[r];
    }
  }
  return out;
}

}  // namespace oracle
