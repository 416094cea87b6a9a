#include "scaledim/distance_index.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "scaledim/errors.hpp"
#include "scaledim/numerics.hpp"

namespace scaledim {

double DistanceIndex::pair_distance_percentile(double percent) const {
  const std::size_t m = pair_dists_.size();
  if (m == 0) {
    throw DegenerateInputError("no nonzero pairwise distances");
  }
  if (percent <= 0.0) return pair_dists_.front();
  std::size_t rank = static_cast<std::size_t>(
      std::ceil(percent / 100.0 * static_cast<double>(m)));
  if (rank < 1) rank = 1;
  if (rank > m) rank = m;
  return pair_dists_[rank - 1];
}

DistanceIndex build_distance_index(const PointCloud& cloud) {
  cloud.validate();
  const std::size_t n = cloud.n();

  DistanceIndex index;
  index.n_ = n;
  index.entries_.resize(n * (n - 1));
  index.zero_counts_.assign(n, 0);

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> dup_per_row(n);

  parallel_for(n, [&](std::size_t i) {
    IndexEntry* row = index.entries_.data() + i * (n - 1);
    std::size_t w = 0;
    auto xi = cloud.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      row[w++] = {euclidean_distance(xi, cloud.row(j)),
                  static_cast<std::uint32_t>(j)};
    }
    std::sort(row, row + (n - 1), [](const IndexEntry& a, const IndexEntry& b) {
      if (a.dist != b.dist) return a.dist < b.dist;
      return a.id < b.id;
    });
    std::uint32_t zeros = 0;
    while (zeros < n - 1 && row[zeros].dist == 0.0) ++zeros;
    index.zero_counts_[i] = zeros;
    for (std::uint32_t z = 0; z < zeros; ++z) {
      if (row[z].id > i) {
        dup_per_row[i].emplace_back(static_cast<std::uint32_t>(i), row[z].id);
      }
    }
  });

  for (auto& dups : dup_per_row) {
    index.duplicate_pairs_.insert(index.duplicate_pairs_.end(), dups.begin(),
                                  dups.end());
  }

  index.pair_dists_.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (const IndexEntry& e : index.row(static_cast<std::uint32_t>(i))) {
      if (e.id > i && e.dist > 0.0) index.pair_dists_.push_back(e.dist);
    }
  }
  if (index.pair_dists_.empty()) {
    throw DegenerateInputError(
        "all points are identical; s_min is undefined");
  }
  std::sort(index.pair_dists_.begin(), index.pair_dists_.end());
  index.s_min_ = index.pair_dists_.front();
  index.s_max_ = index.pair_dists_.back();
  return index;
}

namespace {

struct Candidate {
  double closeness;  // |scale - dist|
  double dist;
  std::uint32_t id;
};

inline bool candidate_less(const Candidate& a, const Candidate& b) {
  if (a.closeness != b.closeness) return a.closeness < b.closeness;
  if (a.dist != b.dist) return a.dist < b.dist;
  return a.id < b.id;
}

}  // namespace

NeighborSelection sphere_neighbors(const DistanceIndex& index,
                                   std::uint32_t center, double scale,
                                   std::size_t count, bool skip_coincident) {
  if (center >= index.n()) {
    throw ParameterError("center id out of range");
  }
  if (scale <= 0.0) {
    throw ParameterError("scale must be positive");
  }
  auto row = index.row(center);
  std::size_t offset = skip_coincident ? index.zero_count(center) : 0;
  const IndexEntry* begin = row.data() + offset;
  const std::size_t avail = row.size() - offset;
  if (count < 1 || count > avail) {
    throw InsufficientPointsError(
        "requested " + std::to_string(count) + " neighbors, only " +
        std::to_string(avail) + " available around point " +
        std::to_string(center));
  }

  // Entries sorted by distance make |scale - dist| V-shaped: walk outward
  // from the first entry with dist >= scale, then resolve ties by a final
  // sort over the (small) candidate set.
  const IndexEntry* split = std::lower_bound(
      begin, begin + avail, scale,
      [](const IndexEntry& e, double s) { return e.dist < s; });

  std::vector<Candidate> cands;
  cands.reserve(count + 4);
  std::ptrdiff_t left = (split - begin) - 1;
  std::size_t right = static_cast<std::size_t>(split - begin);

  auto push = [&](std::size_t pos) {
    const IndexEntry& e = begin[pos];
    cands.push_back({std::fabs(scale - e.dist), e.dist, e.id});
  };

  while (cands.size() < count) {
    bool has_left = left >= 0;
    bool has_right = right < avail;
    if (!has_left && !has_right) break;
    if (!has_right ||
        (has_left &&
         std::fabs(scale - begin[left].dist) <= std::fabs(scale - begin[right].dist))) {
      push(static_cast<std::size_t>(left--));
    } else {
      push(right++);
    }
  }

  // pull in everything tied with the worst kept closeness so the final sort
  // applies the tie-break over the full tie class
  double worst = 0.0;
  for (const Candidate& c : cands) worst = std::max(worst, c.closeness);
  while (left >= 0 && std::fabs(scale - begin[left].dist) == worst) {
    push(static_cast<std::size_t>(left--));
  }
  while (right < avail && std::fabs(scale - begin[right].dist) == worst) {
    push(right++);
  }

  std::sort(cands.begin(), cands.end(), candidate_less);
  cands.resize(count);

  NeighborSelection sel;
  sel.center = center;
  sel.scale = scale;
  sel.neighbors.reserve(count);
  for (const Candidate& c : cands) sel.neighbors.push_back({c.dist, c.id});
  return sel;
}

}  // namespace scaledim
