#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "scaledim/point_cloud.hpp"

namespace scaledim {

struct IndexEntry {
  double dist;
  std::uint32_t id;
};

// Per point, the distances to all other points sorted ascending (ties by id),
// plus the sorted multiset of nonzero pairwise distances. Memory is O(n^2),
// which buys O(log n + count) sphere-proximity queries at desk scale.
class DistanceIndex {
 public:
  std::size_t n() const { return n_; }
  double s_min() const { return s_min_; }
  double s_max() const { return s_max_; }

  // n-1 entries, sorted ascending by (distance, id)
  std::span<const IndexEntry> row(std::uint32_t i) const {
    return {entries_.data() + static_cast<std::size_t>(i) * (n_ - 1), n_ - 1};
  }

  // leading entries of row(i) at exactly zero distance (coincident points)
  std::uint32_t zero_count(std::uint32_t i) const { return zero_counts_[i]; }

  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& duplicate_pairs()
      const {
    return duplicate_pairs_;
  }

  // sorted nonzero pairwise distances, one entry per unordered pair
  std::span<const double> pair_distances() const { return pair_dists_; }

  // nearest-rank order statistic of the nonzero pairwise-distance multiset;
  // percent 0 maps to the smallest element
  double pair_distance_percentile(double percent) const;

  friend DistanceIndex build_distance_index(const PointCloud& cloud);

 private:
  std::size_t n_ = 0;
  double s_min_ = 0.0;
  double s_max_ = 0.0;
  std::vector<IndexEntry> entries_;  // n rows of n-1, flat
  std::vector<std::uint32_t> zero_counts_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> duplicate_pairs_;
  std::vector<double> pair_dists_;
};

DistanceIndex build_distance_index(const PointCloud& cloud);

// Ordered ids closest to the sphere of radius `scale` around the center,
// i.e. ascending |scale - distance|, ties by smaller distance then smaller id.
struct NeighborSelection {
  std::uint32_t center;
  double scale;
  std::vector<IndexEntry> neighbors;
};

// `skip_coincident` drops zero-distance neighbors before selecting; the angle
// field uses that so duplicates never produce zero direction vectors.
NeighborSelection sphere_neighbors(const DistanceIndex& index,
                                   std::uint32_t center, double scale,
                                   std::size_t count,
                                   bool skip_coincident = false);

}  // namespace scaledim
