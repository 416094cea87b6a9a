#pragma once

#include <string>
#include <vector>

#include "scaledim/distance_index.hpp"

namespace scaledim {

enum class NormalizerMode { max_pairwise, p95_pairwise };

std::string to_string(NormalizerMode mode);
NormalizerMode normalizer_mode_from_string(const std::string& s);

struct GridPoint {
  double percent;       // percentile label: 0 is s_min, 100 is s_max
  double raw;           // order statistic of the pairwise-distance multiset
  double standardized;  // raw divided by the normalizer
};

// The evaluation scales s_min, s_step%, ..., s_max. Every label is kept so
// profiles of different datasets align position-by-position; the deduplicated
// raw values are available separately.
class ScaleGrid {
 public:
  ScaleGrid(std::vector<GridPoint> points, NormalizerMode mode,
            double normalizer, double step_percent)
      : points_(std::move(points)),
        mode_(mode),
        normalizer_(normalizer),
        step_percent_(step_percent) {}

  const std::vector<GridPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  NormalizerMode mode() const { return mode_; }
  double normalizer() const { return normalizer_; }
  double step_percent() const { return step_percent_; }

  // strictly ascending raw scales (duplicates collapsed)
  std::vector<double> distinct_raw() const;

 private:
  std::vector<GridPoint> points_;
  NormalizerMode mode_;
  double normalizer_;
  double step_percent_;
};

ScaleGrid build_scale_grid(const DistanceIndex& index, double step_percent = 5.0,
                           NormalizerMode mode = NormalizerMode::max_pairwise);

}  // namespace scaledim
