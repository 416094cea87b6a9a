#pragma once

#include <cstdint>
#include <vector>

#include "scaledim/distance_index.hpp"
#include "scaledim/normalizers.hpp"
#include "scaledim/point_cloud.hpp"
#include "scaledim/scale_grid.hpp"

namespace scaledim {

enum class CellMask : std::uint8_t {
  ok = 0,
  insufficient_neighbors = 1,  // too few non-coincident points at this center
  degenerate = 2,
};

// theta_i^k(s) over (point, order, grid label) for k in [k_min, k_max]
class AngleField {
 public:
  AngleField(std::size_t n, int k_min, int k_max, std::size_t labels);

  std::size_t n() const { return n_; }
  int k_min() const { return k_min_; }
  int k_max() const { return k_max_; }
  std::size_t labels() const { return labels_; }

  double theta(std::uint32_t i, int k, std::size_t label) const {
    return theta_[slot(i, k, label)];
  }
  CellMask mask(std::uint32_t i, int k, std::size_t label) const {
    return static_cast<CellMask>(mask_[slot(i, k, label)]);
  }

  void set(std::uint32_t i, int k, std::size_t label, double theta,
           CellMask mask) {
    theta_[slot(i, k, label)] = theta;
    mask_[slot(i, k, label)] = static_cast<std::uint8_t>(mask);
  }

 private:
  std::size_t slot(std::uint32_t i, int k, std::size_t label) const {
    return (static_cast<std::size_t>(k - k_min_) * labels_ + label) * n_ + i;
  }

  std::size_t n_;
  int k_min_;
  int k_max_;
  std::size_t labels_;
  std::vector<double> theta_;
  std::vector<std::uint8_t> mask_;
};

// For every point, order and grid scale: take k+1 sphere-proximate neighbors
// (coincident points skipped), base = first k, apex = the (k+1)-th.
AngleField compute_angle_field(const PointCloud& cloud,
                               const DistanceIndex& index,
                               const ScaleGrid& grid, int k_max, int k_min = 1);

struct TCell {
  double t = 0.0;
  std::uint32_t count = 0;  // points contributing to the mean
  bool available = false;
  bool reliable = false;  // count >= max(10, n/10)
};

// T_k(s) = k + mean(theta)/a_k over the same (order, label) lattice
class TProfile {
 public:
  TProfile(int k_min, int k_max, std::size_t labels)
      : k_min_(k_min),
        k_max_(k_max),
        labels_(labels),
        cells_(static_cast<std::size_t>(k_max - k_min + 1) * labels) {}

  int k_min() const { return k_min_; }
  int k_max() const { return k_max_; }
  std::size_t labels() const { return labels_; }

  const TCell& cell(int k, std::size_t label) const {
    return cells_[static_cast<std::size_t>(k - k_min_) * labels_ + label];
  }
  TCell& cell(int k, std::size_t label) {
    return cells_[static_cast<std::size_t>(k - k_min_) * labels_ + label];
  }

 private:
  int k_min_;
  int k_max_;
  std::size_t labels_;
  std::vector<TCell> cells_;
};

TProfile compute_T(const AngleField& field, const NormalizerTable& normalizers);

}  // namespace scaledim
