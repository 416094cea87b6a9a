#include "scaledim/angle_field.hpp"

#include <algorithm>
#include <cmath>

#include "scaledim/errors.hpp"
#include "scaledim/numerics.hpp"
#include "scaledim/projection.hpp"

namespace scaledim {

AngleField::AngleField(std::size_t n, int k_min, int k_max, std::size_t labels)
    : n_(n), k_min_(k_min), k_max_(k_max), labels_(labels) {
  std::size_t cells = static_cast<std::size_t>(k_max - k_min + 1) * labels * n;
  theta_.assign(cells, 0.0);
  mask_.assign(cells, static_cast<std::uint8_t>(CellMask::ok));
}

AngleField compute_angle_field(const PointCloud& cloud,
                               const DistanceIndex& index,
                               const ScaleGrid& grid, int k_max, int k_min) {
  const std::size_t n = cloud.n();
  const std::size_t d = cloud.dim();
  const int k_cap = static_cast<int>(std::min(d - 1, n - 2));
  if (k_min < 1 || k_min > k_max) {
    throw ParameterError("need 1 <= k_min <= k_max");
  }
  if (k_max > k_cap) {
    throw ParameterError("k_max " + std::to_string(k_max) +
                         " exceeds min(d-1, n-2) = " + std::to_string(k_cap));
  }

  AngleField field(n, k_min, k_max, grid.size());
  const auto& points = grid.points();

  parallel_for(n, [&](std::size_t pi) {
    const auto center = static_cast<std::uint32_t>(pi);
    const std::size_t avail = (n - 1) - index.zero_count(center);
    const std::size_t want = static_cast<std::size_t>(k_max) + 1;
    const std::size_t sel_count = std::min(want, avail);

    std::vector<double> dir(d);
    auto xc = cloud.row(center);

    for (std::size_t label = 0; label < points.size(); ++label) {
      if (sel_count < 2) {
        for (int k = k_min; k <= k_max; ++k) {
          field.set(center, k, label, 0.0, CellMask::insufficient_neighbors);
        }
        continue;
      }
      NeighborSelection sel = sphere_neighbors(index, center, points[label].raw,
                                               sel_count, /*skip_coincident=*/true);
      OrthoBasis basis(d);
      for (int k = 1; k <= k_max; ++k) {
        const std::size_t apex_pos = static_cast<std::size_t>(k);
        if (apex_pos >= sel.neighbors.size()) {
          if (k >= k_min) {
            field.set(center, k, label, 0.0, CellMask::insufficient_neighbors);
          }
          continue;
        }
        auto xb = cloud.row(sel.neighbors[k - 1].id);
        for (std::size_t j = 0; j < d; ++j) dir[j] = xb[j] - xc[j];
        basis.add(dir);
        if (k < k_min) continue;
        if (basis.rank() == 0) {
          field.set(center, k, label, 0.0, CellMask::degenerate);
          continue;
        }
        auto xa = cloud.row(sel.neighbors[apex_pos].id);
        for (std::size_t j = 0; j < d; ++j) dir[j] = xa[j] - xc[j];
        field.set(center, k, label, basis.angle_to(dir), CellMask::ok);
      }
    }
  });

  return field;
}

TProfile compute_T(const AngleField& field, const NormalizerTable& normalizers) {
  TProfile profile(field.k_min(), field.k_max(), field.labels());
  const std::size_t n = field.n();
  const std::uint32_t reliable_floor =
      std::max<std::uint32_t>(10, static_cast<std::uint32_t>(n / 10));

  for (int k = field.k_min(); k <= field.k_max(); ++k) {
    const double a_k = normalizers.value(k);
    for (std::size_t label = 0; label < field.labels(); ++label) {
      NeumaierSum sum;
      std::uint32_t count = 0;
      for (std::uint32_t i = 0; i < n; ++i) {  // ascending id, fixed order
        if (field.mask(i, k, label) != CellMask::ok) continue;
        sum.add(field.theta(i, k, label));
        ++count;
      }
      TCell& cell = profile.cell(k, label);
      if (count == 0) {
        cell = {0.0, 0, false, false};
        continue;
      }
      double mean = sum.value() / static_cast<double>(count);
      cell.t = static_cast<double>(k) + mean / a_k;
      cell.count = count;
      cell.available = true;
      cell.reliable = count >= reliable_floor;
    }
  }
  return profile;
}

}  // namespace scaledim
