#include "scaledim/scale_grid.hpp"

#include <algorithm>
#include <cmath>

#include "scaledim/errors.hpp"

namespace scaledim {

std::string to_string(NormalizerMode mode) {
  return mode == NormalizerMode::max_pairwise ? "max-pairwise" : "p95-pairwise";
}

NormalizerMode normalizer_mode_from_string(const std::string& s) {
  if (s == "max-pairwise") return NormalizerMode::max_pairwise;
  if (s == "p95-pairwise") return NormalizerMode::p95_pairwise;
  throw ParameterError("unknown normalizer mode: " + s);
}

std::vector<double> ScaleGrid::distinct_raw() const {
  std::vector<double> raw;
  raw.reserve(points_.size());
  for (const GridPoint& p : points_) {
    if (raw.empty() || p.raw > raw.back()) raw.push_back(p.raw);
  }
  return raw;
}

ScaleGrid build_scale_grid(const DistanceIndex& index, double step_percent,
                           NormalizerMode mode) {
  if (!(step_percent > 0.0) || step_percent > 50.0) {
    throw ParameterError("step_percent must be in (0, 50]");
  }
  auto dists = index.pair_distances();
  // need at least two distinct nonzero distances for a non-degenerate grid
  if (dists.empty() || dists.front() == dists.back()) {
    throw DegenerateInputError(
        "fewer than 2 distinct pairwise distances; grid is degenerate");
  }

  double normalizer = mode == NormalizerMode::max_pairwise
                          ? index.s_max()
                          : index.pair_distance_percentile(95.0);

  std::vector<GridPoint> points;
  for (int j = 0;; ++j) {
    double percent = j * step_percent;
    if (percent >= 100.0) break;
    points.push_back({percent, index.pair_distance_percentile(percent), 0.0});
  }
  points.push_back({100.0, index.s_max(), 0.0});
  for (GridPoint& p : points) p.standardized = p.raw / normalizer;

  return ScaleGrid(std::move(points), mode, normalizer, step_percent);
}

}  // namespace scaledim
